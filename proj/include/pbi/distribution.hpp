#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pbi/errors.hpp"
#include "pbi/interval.hpp"
#include "pbi/rational.hpp"

namespace pbi {

using CitationCount = std::uint64_t;

// One publication: opaque identifiers, a final citation count, and the
// research groups it belongs to.
struct PublicationRecord {
  std::string pub_id;
  std::string field_id;
  CitationCount citations = 0;
  std::set<std::string> groups;

  friend bool operator==(const PublicationRecord&,
                         const PublicationRecord&) = default;
};

// Shares of a field's publications below / exactly at / above a citation
// threshold. The three components sum to exactly 1.
struct BandStats {
  Rational below;
  Rational at;
  Rational above;
};

// Per-field citation histogram: c_i publications with exactly i citations,
// stored sparsely in ascending citation order. Immutable after construction;
// all queries are pure and safe for concurrent use.
class CitationDistribution {
 public:
  // Zero-count entries are dropped; an empty histogram is rejected.
  CitationDistribution(std::string field_id,
                       const std::map<CitationCount, std::uint64_t>& counts)
      : field_id_(std::move(field_id)) {
    for (const auto& [citations, count] : counts) {
      if (count == 0) continue;
      counts_.emplace_back(citations, count);
    }
    if (counts_.empty())
      throw EmptyDataset("field '" + field_id_ + "' has no publications");
    cumulative_.reserve(counts_.size());
    std::uint64_t running = 0;
    for (const auto& [citations, count] : counts_) {
      running += count;
      cumulative_.push_back(running);
    }
  }

  const std::string& field_id() const { return field_id_; }

  // Ascending (citation count, c_i) pairs; every c_i is positive.
  const std::vector<std::pair<CitationCount, std::uint64_t>>& counts() const {
    return counts_;
  }

  std::uint64_t total() const { return cumulative_.back(); }

  CitationCount max_citations() const { return counts_.back().first; }

  std::uint64_t count_at(CitationCount i) const {
    std::size_t pos = lower_bound_index(i);
    if (pos < counts_.size() && counts_[pos].first == i)
      return counts_[pos].second;
    return 0;
  }

  bool contains(CitationCount i) const { return count_at(i) > 0; }

  // Number of publications with fewer than i citations.
  std::uint64_t count_below(CitationCount i) const {
    std::size_t pos = lower_bound_index(i);
    return pos == 0 ? 0 : cumulative_[pos - 1];
  }

  // q_i: the proportion of publications with fewer than i citations.
  Rational cumulative_below(CitationCount i) const {
    return share(count_below(i));
  }

  // The segment [q_i, q_{i+1}] of the unit interval covered by publications
  // with exactly i citations. Undefined when c_i = 0.
  Interval segment(CitationCount i) const {
    std::uint64_t at = count_at(i);
    if (at == 0)
      throw UndefinedSegment("no publications with " + std::to_string(i) +
                             " citations in field '" + field_id_ + "'");
    std::uint64_t below = count_below(i);
    return Interval{share(below), share(below + at)};
  }

  // Smallest citation count t such that the share of publications with at
  // most t citations reaches p. The result is always an attained count.
  CitationCount percentile_threshold(const Rational& p) const {
    Rational target = p * Rational(BigInt::from_unsigned(total()), BigInt(1));
    for (std::size_t k = 0; k < counts_.size(); ++k) {
      if (Rational(BigInt::from_unsigned(cumulative_[k]), BigInt(1)) >= target)
        return counts_[k].first;
    }
    return counts_.back().first;  // p <= 1 always lands earlier
  }

  // Shares of publications below / at / above threshold t.
  BandStats band_stats(CitationCount t) const {
    std::uint64_t below = count_below(t);
    std::uint64_t at = count_at(t);
    return BandStats{share(below), share(at), share(total() - below - at)};
  }

 private:
  std::string field_id_;
  std::vector<std::pair<CitationCount, std::uint64_t>> counts_;
  std::vector<std::uint64_t> cumulative_;  // inclusive prefix sums of c_i

  std::size_t lower_bound_index(CitationCount i) const {
    std::size_t lo = 0, hi = counts_.size();
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (counts_[mid].first < i)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  Rational share(std::uint64_t count) const {
    return Rational(BigInt::from_unsigned(count), BigInt::from_unsigned(total()));
  }
};

// Groups records by field and builds one distribution per field.
// Rejects duplicate pub_ids and empty input.
inline std::map<std::string, CitationDistribution> build_distributions(
    std::span<const PublicationRecord> records) {
  if (records.empty()) throw EmptyDataset("no publication records");
  std::unordered_set<std::string_view> seen;
  seen.reserve(records.size());
  std::map<std::string, std::map<CitationCount, std::uint64_t>> by_field;
  for (const PublicationRecord& record : records) {
    if (!seen.insert(record.pub_id).second)
      throw DuplicatePublication("duplicate pub_id '" + record.pub_id + "'");
    ++by_field[record.field_id][record.citations];
  }
  std::map<std::string, CitationDistribution> result;
  for (const auto& [field_id, counts] : by_field)
    result.emplace(field_id, CitationDistribution(field_id, counts));
  return result;
}

}  // namespace pbi
