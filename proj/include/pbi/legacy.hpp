#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "pbi/distribution.hpp"
#include "pbi/errors.hpp"
#include "pbi/fractional.hpp"
#include "pbi/scheme.hpp"

namespace pbi {

// Earlier approaches to percentile-based indicators, kept side by side with
// the fractional approach so their field-level biases can be compared.
// leydesdorff / nsb and scimago / rousseau are documented equivalences: the
// pairs always evaluate to the same result.
enum class ApproachId {
  fractional,
  leydesdorff,
  nsb,
  pudovkin_garfield,
  scimago,
  rousseau,
  schreiber,
  schreiber_inclusive,
  cwts,
};

inline constexpr std::array<ApproachId, 9> kAllApproaches = {
    ApproachId::fractional,        ApproachId::leydesdorff,
    ApproachId::nsb,               ApproachId::pudovkin_garfield,
    ApproachId::scimago,           ApproachId::rousseau,
    ApproachId::schreiber,         ApproachId::schreiber_inclusive,
    ApproachId::cwts,
};

inline std::string_view to_string(ApproachId approach) {
  switch (approach) {
    case ApproachId::fractional: return "fractional";
    case ApproachId::leydesdorff: return "leydesdorff";
    case ApproachId::nsb: return "nsb";
    case ApproachId::pudovkin_garfield: return "pudovkin_garfield";
    case ApproachId::scimago: return "scimago";
    case ApproachId::rousseau: return "rousseau";
    case ApproachId::schreiber: return "schreiber";
    case ApproachId::schreiber_inclusive: return "schreiber_inclusive";
    case ApproachId::cwts: return "cwts";
  }
  return "unknown";
}

inline std::optional<ApproachId> approach_from_string(std::string_view name) {
  for (ApproachId approach : kAllApproaches) {
    if (to_string(approach) == name) return approach;
  }
  return std::nullopt;
}

// scimago, rousseau, schreiber and cwts are defined only for top-x%
// indicators; the percentile-valued approaches work with any scheme.
inline bool approach_requires_top_x(ApproachId approach) {
  switch (approach) {
    case ApproachId::scimago:
    case ApproachId::rousseau:
    case ApproachId::schreiber:
    case ApproachId::schreiber_inclusive:
    case ApproachId::cwts:
      return true;
    default:
      return false;
  }
}

namespace detail {

inline void require_defined(const CitationDistribution& dist,
                            CitationCount i) {
  if (!dist.contains(i))
    throw UndefinedScore("score undefined: no publications with " +
                         std::to_string(i) + " citations in field '" +
                         dist.field_id() + "'");
}

inline Rational require_top_x(const PercentileScheme& scheme,
                              ApproachId approach) {
  if (!is_top_x(scheme))
    throw ApproachSchemeMismatch(std::string(to_string(approach)) +
                                 " is defined only for top-x% schemes, not '" +
                                 scheme.name + "'");
  return top_x_fraction(scheme);
}

}  // namespace detail

// Percentile of a publication as the share with strictly fewer citations
// (q_i). Classification always uses this exact value; rounding it to an
// integer percentage is a display concern.
inline Rational leydesdorff_percentile(const CitationDistribution& dist,
                                       CitationCount i) {
  detail::require_defined(dist, i);
  return dist.cumulative_below(i);
}

// Score of the interval a percentile falls into: the unique k with
// p_{k-1} <= percentile < p_k, with the top interval closed above.
inline Rational legacy_interval_score(const PercentileScheme& scheme,
                                      const Rational& percentile) {
  for (std::size_t k = 1; k + 1 < scheme.boundaries.size(); ++k) {
    if (percentile < scheme.boundaries[k]) return scheme.scores[k - 1];
  }
  return scheme.scores.back();
}

// Average rank percentile of the tied block: ranks below+1 .. below+c_i,
// each divided by the total, averaged. The random tie order the procedure
// describes averages out, leaving (below + (c_i + 1)/2) / total.
inline Rational pudovkin_garfield_percentile(const CitationDistribution& dist,
                                             CitationCount i) {
  detail::require_defined(dist, i);
  Rational below(BigInt::from_unsigned(dist.count_below(i)), BigInt(1));
  Rational block(BigInt::from_unsigned(dist.count_at(i)), BigInt(1));
  Rational total(BigInt::from_unsigned(dist.total()), BigInt(1));
  return (below + (block + Rational(1)) / Rational(2)) / total;
}

namespace detail {

// Share of the field's publications with at least i citations.
inline Rational share_at_or_above(const CitationDistribution& dist,
                                  CitationCount i) {
  return Rational(BigInt::from_unsigned(dist.total() - dist.count_below(i)),
                  BigInt::from_unsigned(dist.total()));
}

}  // namespace detail

// Top-x% set chosen to contain at least x of the field: member iff the
// citation count reaches the largest threshold whose tail share is still
// >= x.
inline bool scimago_membership(const CitationDistribution& dist,
                               const Rational& x, CitationCount i) {
  detail::require_defined(dist, i);
  CitationCount threshold = dist.counts().front().first;
  for (const auto& [citations, count] : dist.counts()) {
    if (detail::share_at_or_above(dist, citations) >= x)
      threshold = citations;
  }
  return i >= threshold;
}

// Top-x% set chosen to contain at most x of the field: member iff its own
// tail share is <= x.
inline bool nsb_membership(const CitationDistribution& dist, const Rational& x,
                           CitationCount i) {
  detail::require_defined(dist, i);
  return detail::share_at_or_above(dist, i) <= x;
}

// Fraction of a tied block counted as top-x%. Slot j of the block has rank
// percentile (below + j) / total; the fraction is the share of slots whose
// percentile reaches 1 - x. The exclusive variant ranges j over 0..c_i-1
// (the publication itself left out of the numerator), the inclusive variant
// over 1..c_i. Order-independent, so the closed form is exact.
inline Rational schreiber_fraction(const CitationDistribution& dist,
                                   const Rational& x, CitationCount i,
                                   bool inclusive) {
  detail::require_defined(dist, i);
  std::uint64_t block = dist.count_at(i);
  Rational below(BigInt::from_unsigned(dist.count_below(i)), BigInt(1));
  Rational total(BigInt::from_unsigned(dist.total()), BigInt(1));
  // Smallest integer j with (below + j) / total >= 1 - x.
  BigInt first_qualifying = ((Rational(1) - x) * total - below).ceil();
  BigInt lo = inclusive ? BigInt(1) : BigInt(0);
  BigInt hi = inclusive ? BigInt::from_unsigned(block)
                        : BigInt::from_unsigned(block) - BigInt(1);
  if (first_qualifying < lo) first_qualifying = lo;
  BigInt qualifying = first_qualifying > hi
                          ? BigInt(0)
                          : hi - first_qualifying + BigInt(1);
  return Rational(qualifying, BigInt::from_unsigned(block));
}

// One field's calibration of the threshold approach: the attained threshold
// whose tail share deviates least from x, and the factor rescaling that
// share to exactly x.
struct CwtsCalibration {
  CitationCount threshold = 0;
  Rational raw_share;  // share of the field at or above the threshold
  Rational factor;     // x / raw_share
};

// Ties in the deviation are broken toward the larger threshold
// (underrepresentation); the normalization factor corrects either way.
inline CwtsCalibration cwts_calibrate(const CitationDistribution& dist,
                                      const Rational& x) {
  CwtsCalibration best;
  Rational best_deviation;
  bool have_best = false;
  for (const auto& [citations, count] : dist.counts()) {
    Rational share = detail::share_at_or_above(dist, citations);
    Rational deviation = abs(share - x);
    if (!have_best || deviation <= best_deviation) {
      best.threshold = citations;
      best.raw_share = share;
      best_deviation = deviation;
      have_best = true;
    }
  }
  best.factor = x / best.raw_share;
  return best;
}

// Normalized share of a group's publications at or above the calibrated
// threshold. All members must belong to the calibrated field.
inline Rational cwts_group_indicator(std::span<const PublicationRecord> members,
                                     const CwtsCalibration& calibration) {
  if (members.empty()) throw EmptyGroup("group has no publications");
  std::uint64_t meeting = 0;
  for (const PublicationRecord& member : members) {
    if (member.citations >= calibration.threshold) ++meeting;
  }
  return calibration.factor *
         Rational(BigInt::from_unsigned(meeting),
                  BigInt::from_unsigned(members.size()));
}

// Score of a single publication under any approach. Requires c_i > 0 in the
// publication's field.
inline Rational approach_publication_score(const CitationDistribution& dist,
                                           const PercentileScheme& scheme,
                                           ApproachId approach,
                                           CitationCount i) {
  switch (approach) {
    case ApproachId::fractional:
      return publication_score(dist, scheme, i).value;
    case ApproachId::leydesdorff:
      return legacy_interval_score(scheme, leydesdorff_percentile(dist, i));
    case ApproachId::nsb: {
      if (is_top_x(scheme)) {
        return nsb_membership(dist, top_x_fraction(scheme), i) ? Rational(1)
                                                               : Rational(0);
      }
      // Same percentile-to-interval rule as leydesdorff; the approaches are
      // equivalent.
      return legacy_interval_score(scheme, leydesdorff_percentile(dist, i));
    }
    case ApproachId::pudovkin_garfield:
      return legacy_interval_score(scheme,
                                   pudovkin_garfield_percentile(dist, i));
    case ApproachId::scimago:
    case ApproachId::rousseau: {
      Rational x = detail::require_top_x(scheme, approach);
      return scimago_membership(dist, x, i) ? Rational(1) : Rational(0);
    }
    case ApproachId::schreiber:
      return schreiber_fraction(dist, detail::require_top_x(scheme, approach),
                                i, /*inclusive=*/false);
    case ApproachId::schreiber_inclusive:
      return schreiber_fraction(dist, detail::require_top_x(scheme, approach),
                                i, /*inclusive=*/true);
    case ApproachId::cwts: {
      Rational x = detail::require_top_x(scheme, approach);
      detail::require_defined(dist, i);
      CwtsCalibration calibration = cwts_calibrate(dist, x);
      return i >= calibration.threshold ? calibration.factor : Rational(0);
    }
  }
  throw std::logic_error("approach_publication_score: unknown approach");
}

// Group indicator under any approach: the average of per-publication scores,
// each publication scored against its own field. For cwts every field is
// calibrated separately.
inline Rational legacy_group_indicator(
    std::span<const PublicationRecord> members,
    const std::map<std::string, CitationDistribution>& dists,
    ApproachId approach, const PercentileScheme& scheme) {
  if (members.empty()) throw EmptyGroup("group has no publications");
  if (approach_requires_top_x(approach))
    detail::require_top_x(scheme, approach);

  std::map<std::pair<std::string, CitationCount>, Rational> cache;
  Rational sum;
  for (const PublicationRecord& member : members) {
    auto key = std::make_pair(member.field_id, member.citations);
    auto it = cache.find(key);
    if (it == cache.end()) {
      auto dist = dists.find(member.field_id);
      if (dist == dists.end())
        throw InconsistentDataset("publication '" + member.pub_id +
                                  "': field '" + member.field_id +
                                  "' has no distribution");
      if (!dist->second.contains(member.citations))
        throw InconsistentDataset(
            "publication '" + member.pub_id + "': citation count " +
            std::to_string(member.citations) +
            " is absent from the distribution of field '" + member.field_id +
            "'");
      it = cache
               .emplace(key, approach_publication_score(
                                 dist->second, scheme, approach,
                                 member.citations))
               .first;
    }
    sum += it->second;
  }
  return sum / Rational(static_cast<long long>(members.size()));
}

}  // namespace pbi
