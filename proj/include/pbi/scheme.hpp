#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pbi/errors.hpp"
#include "pbi/rational.hpp"

namespace pbi {

// N percentile intervals over [0, 1]: boundaries p_0 < p_1 < ... < p_N with
// p_0 = 0 and p_N = 1, and strictly increasing scores s_1 < ... < s_N, one
// per interval [p_{k-1}, p_k]. Immutable value type.
struct PercentileScheme {
  std::string name;
  std::vector<Rational> boundaries;  // p_0 .. p_N
  std::vector<Rational> scores;      // s_1 .. s_N

  std::size_t interval_count() const { return scores.size(); }

  friend bool operator==(const PercentileScheme&,
                         const PercentileScheme&) = default;
};

// Throws InvalidScheme naming the first violated invariant.
inline void validate(const PercentileScheme& scheme) {
  if (scheme.boundaries.size() < 3)
    throw InvalidScheme("scheme '" + scheme.name +
                        "': at least 2 intervals required");
  if (scheme.scores.size() != scheme.boundaries.size() - 1)
    throw InvalidScheme("scheme '" + scheme.name +
                        "': need exactly one score per interval");
  if (!scheme.boundaries.front().is_zero())
    throw InvalidScheme("scheme '" + scheme.name +
                        "': first boundary must be 0");
  if (scheme.boundaries.back() != Rational(1))
    throw InvalidScheme("scheme '" + scheme.name +
                        "': last boundary must be 1");
  for (std::size_t k = 1; k < scheme.boundaries.size(); ++k) {
    if (!(scheme.boundaries[k - 1] < scheme.boundaries[k]))
      throw InvalidScheme("scheme '" + scheme.name +
                          "': boundaries must be strictly increasing");
  }
  for (std::size_t k = 1; k < scheme.scores.size(); ++k) {
    if (!(scheme.scores[k - 1] < scheme.scores[k]))
      throw InvalidScheme("scheme '" + scheme.name +
                          "': scores must be strictly increasing");
  }
}

// True for two-interval schemes scored 0/1, i.e. proportion-of-top-x%
// indicators. The top share x is 1 - p_1.
inline bool is_top_x(const PercentileScheme& scheme) {
  return scheme.scores.size() == 2 && scheme.scores[0].is_zero() &&
         scheme.scores[1] == Rational(1);
}

inline Rational top_x_fraction(const PercentileScheme& scheme) {
  if (!is_top_x(scheme))
    throw std::logic_error("top_x_fraction: not a top-x% scheme");
  return Rational(1) - scheme.boundaries[1];
}

namespace detail {

// Compact label: integer or terminating decimal when possible, "num/den"
// otherwise.
inline std::string compact_label(const Rational& value) {
  if (value.is_integer()) return value.num().to_string();
  for (unsigned places = 1; places <= 6; ++places) {
    std::string rendered = value.to_decimal_string(places);
    if (Rational::parse(rendered) == value) {
      while (rendered.back() == '0') rendered.pop_back();
      if (rendered.back() == '.') rendered.pop_back();
      return rendered;
    }
  }
  return value.to_fraction_string();
}

}  // namespace detail

// Two intervals, boundary at 1-x, scores 0 and 1. Its indicator is the
// proportion of publications in the top x of their field.
inline PercentileScheme top_x_scheme(const Rational& x) {
  if (!(Rational(0) < x && x < Rational(1)))
    throw InvalidScheme("top-x%: x must lie strictly between 0 and 1");
  PercentileScheme scheme;
  scheme.name = "top" + detail::compact_label(x * Rational(100)) + "%";
  scheme.boundaries = {Rational(0), Rational(1) - x, Rational(1)};
  scheme.scores = {Rational(0), Rational(1)};
  return scheme;
}

// The six-interval scheme with boundaries 0.50/0.75/0.90/0.95/0.99 and
// scores 1..6.
inline PercentileScheme r6_scheme() {
  PercentileScheme scheme;
  scheme.name = "R(6)";
  scheme.boundaries = {Rational(0),       Rational(1, 2),   Rational(3, 4),
                       Rational(9, 10),   Rational(19, 20), Rational(99, 100),
                       Rational(1)};
  scheme.scores = {Rational(1), Rational(2), Rational(3),
                   Rational(4), Rational(5), Rational(6)};
  return scheme;
}

// Sum over intervals of length times score. This is the value the whole-field
// indicator of every field must equal under fractional assignment, whatever
// the citation distribution looks like.
inline Rational expected_value(const PercentileScheme& scheme) {
  Rational result;
  for (std::size_t k = 0; k < scheme.scores.size(); ++k) {
    result += (scheme.boundaries[k + 1] - scheme.boundaries[k]) *
              scheme.scores[k];
  }
  return result;
}

}  // namespace pbi
