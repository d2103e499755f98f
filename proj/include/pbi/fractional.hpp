#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pbi/distribution.hpp"
#include "pbi/errors.hpp"
#include "pbi/interval.hpp"
#include "pbi/scheme.hpp"

namespace pbi {

// Fractional assignment of publications to percentile intervals.
//
// Publications with i citations jointly cover the segment [q_i, q_{i+1}] of
// their field's distribution. Each one is assigned to percentile interval k
// with the fraction of that segment the interval overlaps, so a tied block
// straddling a boundary is split exactly instead of being forced to one
// side. Averaged over a whole field this reproduces the scheme's expected
// value for every field, which is the property the legacy approaches lack.

// Exact score of one publication: the overlap-weighted average of interval
// scores, plus the per-interval assignment fractions it was built from.
struct Score {
  std::string field_id;
  CitationCount citations = 0;
  Rational value;                   // weighted average of interval scores
  std::vector<Rational> breakdown;  // assignment fraction per interval, sums to 1
};

// Score of a publication with i citations. Undefined when the field has no
// publication with exactly i citations.
inline Score publication_score(const CitationDistribution& dist,
                               const PercentileScheme& scheme,
                               CitationCount i) {
  if (!dist.contains(i))
    throw UndefinedScore("score undefined: no publications with " +
                         std::to_string(i) + " citations in field '" +
                         dist.field_id() + "'");
  Interval seg = dist.segment(i);
  Rational seg_length = length(seg);

  Score score;
  score.field_id = dist.field_id();
  score.citations = i;
  score.breakdown.reserve(scheme.interval_count());
  for (std::size_t k = 0; k < scheme.interval_count(); ++k) {
    Interval bucket{scheme.boundaries[k], scheme.boundaries[k + 1]};
    Rational fraction = interval_overlap(bucket, seg) / seg_length;
    if (!fraction.is_zero()) score.value += fraction * scheme.scores[k];
    score.breakdown.push_back(std::move(fraction));
  }
  return score;
}

// Average score of a group's publications, each scored against its own
// field's distribution.
inline Rational group_indicator(
    std::span<const PublicationRecord> members,
    const std::map<std::string, CitationDistribution>& dists,
    const PercentileScheme& scheme) {
  if (members.empty()) throw EmptyGroup("group has no publications");
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
      it = cache.emplace(key, publication_score(dist->second, scheme,
                                                member.citations)
                                  .value)
               .first;
    }
    sum += it->second;
  }
  return sum / Rational(static_cast<long long>(members.size()));
}

// Whole-field indicator versus the scheme's distribution-independent target.
struct AuditEntry {
  Rational observed;  // field-wide average score, weighting each count by c_i
  Rational target;    // expected_value(scheme)
  bool exact_match = false;
};

inline AuditEntry field_audit(const CitationDistribution& dist,
                              const PercentileScheme& scheme) {
  Rational weighted_sum;
  for (const auto& [citations, count] : dist.counts()) {
    weighted_sum += publication_score(dist, scheme, citations).value *
                    Rational(BigInt::from_unsigned(count), BigInt(1));
  }
  AuditEntry entry;
  entry.observed =
      weighted_sum / Rational(BigInt::from_unsigned(dist.total()), BigInt(1));
  entry.target = expected_value(scheme);
  entry.exact_match = entry.observed == entry.target;
  return entry;
}

}  // namespace pbi
