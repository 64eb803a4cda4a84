#pragma once

#include <vector>

#include "cdcomb/interval.hpp"

namespace cdcomb::numkernel {

/// Piecewise-linear monotone CDF on a strictly increasing grid. Values are
/// clamped into [0,1] and made nondecreasing at construction; evaluation
/// outside the grid clamps to the end values (never exactly reaching the
/// open interval ends used by combiner inverses).
class GridCdf {
 public:
  GridCdf(std::vector<double> xs, std::vector<double> values);

  double cdf(double x) const;
  double quantile(double p) const;
  /// Slope of the PL segment containing x (one-sided at the ends).
  double density(double x) const;

  const std::vector<double>& grid() const { return xs_; }
  const std::vector<double>& values() const { return vs_; }
  Interval range() const { return {xs_.front(), xs_.back()}; }

 private:
  std::vector<double> xs_;
  std::vector<double> vs_;
};

}  // namespace cdcomb::numkernel
