#include "pbi/legacy.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "test_util.hpp"

using pbi::ApproachId;
using pbi::CitationDistribution;
using pbi::PercentileScheme;
using pbi::Rational;
using pbi_test::main_example;

namespace {

const PercentileScheme kTop10 = pbi::top_x_scheme(Rational(1, 10));

// Whole-field indicator: every publication of the field as one group.
Rational whole_field(const CitationDistribution& dist, ApproachId approach,
                     const PercentileScheme& scheme) {
  std::vector<std::pair<pbi::CitationCount, std::uint64_t>> histogram(
      dist.counts().begin(), dist.counts().end());
  auto records = pbi_test::make_records(dist.field_id(), histogram);
  auto dists = std::map<std::string, CitationDistribution>{
      {dist.field_id(), dist}};
  return pbi::legacy_group_indicator(records, dists, approach, scheme);
}

// Independent Schreiber oracle, tier 1: enumerate every ordering of the
// tied block explicitly and average each publication's membership.
std::vector<Rational> permutation_average(std::uint64_t below,
                                          std::uint64_t block,
                                          std::uint64_t total,
                                          const Rational& x, bool inclusive) {
  Rational cut = Rational(1) - x;
  std::vector<bool> qualifies(block);
  for (std::uint64_t j = 0; j < block; ++j) {
    std::uint64_t rank = below + j + (inclusive ? 1 : 0);
    qualifies[j] =
        Rational(static_cast<long long>(rank),
                 static_cast<long long>(total)) >= cut;
  }
  std::vector<std::size_t> slot_of(block);
  std::iota(slot_of.begin(), slot_of.end(), 0);
  std::vector<std::uint64_t> hits(block, 0);
  std::uint64_t orderings = 0;
  do {
    for (std::uint64_t p = 0; p < block; ++p)
      if (qualifies[slot_of[p]]) ++hits[p];
    ++orderings;
  } while (std::next_permutation(slot_of.begin(), slot_of.end()));

  std::vector<Rational> averages;
  averages.reserve(block);
  for (std::uint64_t p = 0; p < block; ++p) {
    averages.push_back(Rational(static_cast<long long>(hits[p]),
                                static_cast<long long>(orderings)));
  }
  return averages;
}

// Independent Schreiber oracle, tier 2: count qualifying slots by direct
// comparison (no ceiling arithmetic, unlike the implementation).
Rational slot_count_fraction(std::uint64_t below, std::uint64_t block,
                             std::uint64_t total, const Rational& x,
                             bool inclusive) {
  Rational cut = Rational(1) - x;
  std::uint64_t qualifying = 0;
  for (std::uint64_t j = 0; j < block; ++j) {
    std::uint64_t rank = below + j + (inclusive ? 1 : 0);
    if (Rational(static_cast<long long>(rank),
                 static_cast<long long>(total)) >= cut)
      ++qualifying;
  }
  return Rational(static_cast<long long>(qualifying),
                  static_cast<long long>(block));
}

// All value histograms over three fixed citation counts with 1 <= total <= 12.
std::vector<CitationDistribution> small_corpus() {
  std::vector<CitationDistribution> corpus;
  for (int a = 0; a <= 12; ++a) {
    for (int b = 0; a + b <= 12; ++b) {
      for (int c = (a + b == 0 ? 1 : 0); a + b + c <= 12; ++c) {
        std::map<pbi::CitationCount, std::uint64_t> counts;
        if (a > 0) counts[0] = static_cast<std::uint64_t>(a);
        if (b > 0) counts[4] = static_cast<std::uint64_t>(b);
        if (c > 0) counts[11] = static_cast<std::uint64_t>(c);
        corpus.emplace_back("small", counts);
      }
    }
  }
  return corpus;
}

}  // namespace

TEST_CASE("leydesdorff percentile is the share with fewer citations") {
  CitationDistribution dist = main_example();
  Rational p10 = pbi::leydesdorff_percentile(dist, 10);
  CHECK(p10 == Rational(90, 105));
  CHECK((p10 * Rational(100)).to_decimal_string(1) == "85.7");
  CHECK((p10 * Rational(100)).to_decimal_string(0) == "86");  // display only
  CHECK(pbi::leydesdorff_percentile(dist, 0) == Rational(0));
  CHECK(pbi::leydesdorff_percentile(dist, 20) == Rational(100, 105));
  CHECK_THROWS_AS(pbi::leydesdorff_percentile(dist, 5), pbi::UndefinedScore);
}

TEST_CASE("interval lookup classifies with a non-strict lower bound") {
  CHECK(pbi::legacy_interval_score(kTop10, Rational(90, 105)) == Rational(0));
  CHECK(pbi::legacy_interval_score(kTop10, Rational(91, 100)) == Rational(1));
  CHECK(pbi::legacy_interval_score(kTop10, Rational(9, 10)) == Rational(1));
  CHECK(pbi::legacy_interval_score(kTop10, Rational(1)) == Rational(1));
  CHECK(pbi::legacy_interval_score(kTop10, Rational(0)) == Rational(0));
  CHECK(pbi::legacy_interval_score(pbi::r6_scheme(), Rational(90, 105)) ==
        Rational(3));
}

TEST_CASE("pudovkin-garfield averages the tied ranks") {
  CitationDistribution dist = main_example();
  Rational p10 = pbi::pudovkin_garfield_percentile(dist, 10);
  CHECK(p10 == Rational(191, 210));  // 95.5 / 105
  CHECK((p10 * Rational(100)).to_decimal_string(1) == "91.0");
  CHECK(pbi::legacy_interval_score(kTop10, p10) == Rational(1));
  CHECK(pbi::pudovkin_garfield_percentile(dist, 20) == Rational(103, 105));
  // Singleton block: the average of one rank.
  CitationDistribution small("small", {{0, 9}, {10, 1}});
  CHECK(pbi::pudovkin_garfield_percentile(small, 10) == Rational(1));
  CHECK_THROWS_AS(pbi::pudovkin_garfield_percentile(dist, 3),
                  pbi::UndefinedScore);
}

TEST_CASE("pudovkin-garfield closed form equals the rank-mean oracle") {
  std::mt19937_64 rng(11235);
  for (int trial = 0; trial < 60; ++trial) {
    CitationDistribution dist = pbi_test::random_distribution(rng, 12, 20);
    for (const auto& [citations, count] : dist.counts()) {
      std::uint64_t below = dist.count_below(citations);
      Rational mean;
      for (std::uint64_t j = 1; j <= count; ++j) {
        mean += Rational(static_cast<long long>(below + j),
                         static_cast<long long>(dist.total()));
      }
      mean = mean / Rational(static_cast<long long>(count));
      CHECK(pbi::pudovkin_garfield_percentile(dist, citations) == mean);
    }
  }
}

TEST_CASE("scimago includes at least x, nsb at most x") {
  CitationDistribution dist = main_example();
  Rational x(1, 10);
  CHECK(pbi::scimago_membership(dist, x, 10));
  CHECK(pbi::scimago_membership(dist, x, 20));
  CHECK_FALSE(pbi::scimago_membership(dist, x, 0));
  CHECK_FALSE(pbi::nsb_membership(dist, x, 10));
  CHECK(pbi::nsb_membership(dist, x, 20));
  CHECK_FALSE(pbi::nsb_membership(dist, x, 0));

  CHECK(whole_field(dist, ApproachId::scimago, kTop10) == Rational(15, 105));
  CHECK(whole_field(dist, ApproachId::nsb, kTop10) == Rational(5, 105));

  // When some tail share hits x exactly, both approaches attain x.
  CitationDistribution exact("exact", {{0, 9}, {10, 1}});
  CHECK(whole_field(exact, ApproachId::scimago, kTop10) == Rational(1, 10));
  CHECK(whole_field(exact, ApproachId::nsb, kTop10) == Rational(1, 10));

  // A singleton field has no subset of share <= 10%, so nsb selects nothing.
  CitationDistribution solo("solo", {{0, 1}});
  CHECK_FALSE(pbi::nsb_membership(solo, x, 0));
  CHECK(pbi::scimago_membership(solo, x, 0));
}

TEST_CASE("schreiber fractions on the worked example") {
  CitationDistribution dist = main_example();
  Rational x(1, 10);
  CHECK(pbi::schreiber_fraction(dist, x, 10, false) == Rational(1, 2));
  CHECK(pbi::schreiber_fraction(dist, x, 10, true) == Rational(6, 10));
  CHECK(pbi::schreiber_fraction(dist, x, 20, false) == Rational(1));
  CHECK(pbi::schreiber_fraction(dist, x, 20, true) == Rational(1));
  CHECK(pbi::schreiber_fraction(dist, x, 0, false) == Rational(0));
  CHECK(whole_field(dist, ApproachId::schreiber, kTop10) ==
        Rational(10, 105));
  CHECK(whole_field(dist, ApproachId::schreiber_inclusive, kTop10) ==
        Rational(11, 105));
}

TEST_CASE("schreiber closed form equals brute-force permutation averages") {
  const std::vector<Rational> xs = {Rational(1, 10), Rational(1, 4),
                                    Rational(37, 100), Rational(1, 2),
                                    Rational(3, 4)};
  std::uint64_t enumerated_blocks = 0;
  for (const CitationDistribution& dist : small_corpus()) {
    for (const auto& [citations, count] : dist.counts()) {
      std::uint64_t below = dist.count_below(citations);
      for (const Rational& x : xs) {
        for (bool inclusive : {false, true}) {
          Rational closed =
              pbi::schreiber_fraction(dist, x, citations, inclusive);
          CHECK(closed == slot_count_fraction(below, count, dist.total(), x,
                                              inclusive));
          // Full enumeration is limited to blocks of 8 (40320 orderings);
          // 9! and beyond would dominate the suite's runtime.
          if (count <= 8 && (x == Rational(1, 10) || x == Rational(1, 2))) {
            for (const Rational& average : permutation_average(
                     below, count, dist.total(), x, inclusive)) {
              CHECK(closed == average);
            }
            ++enumerated_blocks;
          }
        }
      }
    }
  }
  CHECK(enumerated_blocks > 1000);
}

TEST_CASE("nsb matches leydesdorff and rousseau matches scimago everywhere") {
  std::mt19937_64 rng(31415);
  for (int trial = 0; trial < 80; ++trial) {
    CitationDistribution dist = pbi_test::random_distribution(rng, 25, 40);
    Rational x = pbi_test::random_top_x(rng);
    PercentileScheme top = pbi::top_x_scheme(x);
    for (const auto& [citations, count] : dist.counts()) {
      Rational ley = pbi::legacy_interval_score(
          top, pbi::leydesdorff_percentile(dist, citations));
      CHECK(ley == (pbi::nsb_membership(dist, x, citations) ? Rational(1)
                                                            : Rational(0)));
      CHECK(pbi::approach_publication_score(dist, top, ApproachId::rousseau,
                                            citations) ==
            pbi::approach_publication_score(dist, top, ApproachId::scimago,
                                            citations));
      CHECK(pbi::approach_publication_score(dist, top, ApproachId::nsb,
                                            citations) ==
            pbi::approach_publication_score(dist, top, ApproachId::leydesdorff,
                                            citations));
    }
  }
}

TEST_CASE("cwts calibration on the worked example and its scenarios") {
  Rational x(1, 10);
  pbi::CwtsCalibration main = pbi::cwts_calibrate(main_example(), x);
  CHECK(main.threshold == 10);
  CHECK(main.raw_share == Rational(15, 105));
  CHECK(main.factor == Rational(7, 10));

  pbi::CwtsCalibration nine = pbi::cwts_calibrate(pbi_test::nine_scenario(), x);
  CHECK(nine.threshold == 10);
  CHECK(nine.raw_share == Rational(14, 105));
  CHECK(nine.factor == Rational(3, 4));

  pbi::CwtsCalibration eleven =
      pbi::cwts_calibrate(pbi_test::eleven_scenario(), x);
  CHECK(eleven.threshold == 11);
  CHECK(eleven.raw_share == Rational(7, 105));
  CHECK(eleven.factor == Rational(3, 2));
}

TEST_CASE("cwts breaks exact deviation ties toward the larger threshold") {
  // Tail shares 1, 3/4, 1/4 against x = 1/2: thresholds 5 and 9 deviate by
  // 1/4 each; the larger threshold wins.
  CitationDistribution dist("tie", {{0, 1}, {5, 2}, {9, 1}});
  pbi::CwtsCalibration calibration = pbi::cwts_calibrate(dist, Rational(1, 2));
  CHECK(calibration.threshold == 9);
  CHECK(calibration.raw_share == Rational(1, 4));
  CHECK(calibration.factor == Rational(2));
}

TEST_CASE("cwts normalization makes the whole field score exactly x") {
  std::mt19937_64 rng(653589);
  for (int trial = 0; trial < 80; ++trial) {
    CitationDistribution dist = pbi_test::random_distribution(rng, 25, 40);
    Rational x = pbi_test::random_top_x(rng);
    pbi::CwtsCalibration calibration = pbi::cwts_calibrate(dist, x);
    CHECK(calibration.factor * calibration.raw_share == x);
    CHECK(whole_field(dist, ApproachId::cwts, pbi::top_x_scheme(x)) == x);
  }
}

TEST_CASE("cwts group indicator under the calibrations") {
  auto star = pbi_test::make_records("example", {{0, 9}, {20, 1}});
  Rational x(1, 10);
  CHECK(pbi::cwts_group_indicator(star,
                                  pbi::cwts_calibrate(main_example(), x)) ==
        Rational(7, 100));
  CHECK(pbi::cwts_group_indicator(
            star, pbi::cwts_calibrate(pbi_test::nine_scenario(), x)) ==
        Rational(3, 40));  // 0.0750
  CHECK(pbi::cwts_group_indicator(
            star, pbi::cwts_calibrate(pbi_test::eleven_scenario(), x)) ==
        Rational(3, 20));  // 0.1500
  CHECK_THROWS_AS(
      pbi::cwts_group_indicator({}, pbi::cwts_calibrate(main_example(), x)),
      pbi::EmptyGroup);
}

TEST_CASE("group indicators under the legacy approaches") {
  auto dists = std::map<std::string, CitationDistribution>{
      {"example", main_example()}};
  auto tied = pbi_test::make_records("example", {{0, 9}, {10, 1}});
  CHECK(pbi::legacy_group_indicator(tied, dists, ApproachId::scimago,
                                    kTop10) == Rational(1, 10));
  CHECK(pbi::legacy_group_indicator(tied, dists, ApproachId::nsb, kTop10) ==
        Rational(0));
  CHECK(pbi::legacy_group_indicator(tied, dists, ApproachId::schreiber,
                                    kTop10) == Rational(1, 20));
  CHECK(pbi::legacy_group_indicator(tied, dists, ApproachId::fractional,
                                    kTop10) == Rational(11, 200));
  CHECK_THROWS_AS(pbi::legacy_group_indicator(
                      tied, dists, ApproachId::scimago, pbi::r6_scheme()),
                  pbi::ApproachSchemeMismatch);
  CHECK_THROWS_AS(pbi::legacy_group_indicator({}, dists, ApproachId::scimago,
                                              kTop10),
                  pbi::EmptyGroup);
}

TEST_CASE("whole-field shares sandwich x") {
  std::mt19937_64 rng(979323);
  for (int trial = 0; trial < 60; ++trial) {
    CitationDistribution dist = pbi_test::random_distribution(rng, 20, 40);
    Rational x = pbi_test::random_top_x(rng);
    PercentileScheme top = pbi::top_x_scheme(x);
    Rational nsb = whole_field(dist, ApproachId::nsb, top);
    Rational scimago = whole_field(dist, ApproachId::scimago, top);
    Rational fractional = whole_field(dist, ApproachId::fractional, top);
    CHECK(nsb <= x);
    CHECK(x <= scimago);
    CHECK(fractional == x);
  }
}

TEST_CASE("legacy outputs stay in [0,1] and grow with citations") {
  std::mt19937_64 rng(846264);
  for (int trial = 0; trial < 60; ++trial) {
    CitationDistribution dist = pbi_test::random_distribution(rng, 20, 40);
    Rational x = pbi_test::random_top_x(rng);
    PercentileScheme top = pbi::top_x_scheme(x);
    for (ApproachId approach :
         {ApproachId::leydesdorff, ApproachId::pudovkin_garfield,
          ApproachId::scimago, ApproachId::nsb, ApproachId::schreiber,
          ApproachId::schreiber_inclusive}) {
      Rational previous;
      bool first = true;
      for (const auto& [citations, count] : dist.counts()) {
        Rational value =
            pbi::approach_publication_score(dist, top, approach, citations);
        CHECK(value >= Rational(0));
        CHECK(value <= Rational(1));
        if (!first) CHECK(previous <= value);
        previous = value;
        first = false;
      }
    }
    // The percentiles themselves are monotone too.
    Rational previous;
    bool first = true;
    for (const auto& [citations, count] : dist.counts()) {
      Rational percentile = pbi::pudovkin_garfield_percentile(dist, citations);
      CHECK(percentile >= Rational(0));
      CHECK(percentile <= Rational(1));
      if (!first) CHECK(previous <= percentile);
      previous = percentile;
      first = false;
    }
  }
}

TEST_CASE("approach names round trip") {
  for (ApproachId approach : pbi::kAllApproaches) {
    CHECK(pbi::approach_from_string(pbi::to_string(approach)) == approach);
  }
  CHECK_FALSE(pbi::approach_from_string("nope").has_value());
}
