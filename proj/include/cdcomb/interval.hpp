#pragma once

#include <limits>

namespace cdcomb {

/// Closed interval on the extended real line; lo/hi may be +-infinity.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Interval whole_line() { return {}; }
  static Interval positive_half_line() { return {0.0, std::numeric_limits<double>::infinity()}; }

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  double length() const { return hi - lo; }
};

}  // namespace cdcomb
