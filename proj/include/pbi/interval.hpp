#pragma once

#include <cassert>

#include "pbi/rational.hpp"

namespace pbi {

// Closed interval [lower, upper] with exact rational endpoints.
struct Interval {
  Rational lower;
  Rational upper;

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Rational length(const Interval& iv) {
  assert(iv.lower <= iv.upper);
  return iv.upper - iv.lower;
}

// Length of the intersection of two closed intervals, zero when disjoint
// or merely touching.
inline Rational interval_overlap(const Interval& a, const Interval& b) {
  assert(a.lower <= a.upper && b.lower <= b.upper);
  Rational low = a.lower < b.lower ? b.lower : a.lower;
  Rational high = a.upper < b.upper ? a.upper : b.upper;
  return high > low ? high - low : Rational(0);
}

}  // namespace pbi
