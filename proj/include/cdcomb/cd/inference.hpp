#pragma once

#include <optional>
#include <vector>

#include "cdcomb/cd/conf_dist.hpp"

namespace cdcomb {

struct PointEstimates {
  double median;
  std::optional<double> mean;  // absent when tail mass defeats the quadrature
  double mode;
};

/// Median H^{-1}(1/2), mean int t dH(t) (quadrature in probability space,
/// declared unavailable when the clipped tails contribute > 1e-6), and the
/// argmax of the density.
PointEstimates point_estimates(const ConfDist& cd);

enum class IntervalKind { lower, upper, two_sided };

/// lower  -> (-inf, H^{-1}(1-alpha)]
/// upper  -> [H^{-1}(alpha), inf)
/// two_sided -> (H^{-1}(alpha/2), H^{-1}(1-alpha/2))
Interval confidence_interval(const ConfDist& cd, double alpha,
                             IntervalKind kind = IntervalKind::two_sided);

/// Null-hypothesis region: a ray, a point, or a finite union of disjoint
/// closed intervals (kept sorted).
struct Hypothesis {
  enum class Kind { left_ray, right_ray, singleton, interval_union };
  Kind kind;
  double point = 0.0;                // ray endpoint / singleton location
  std::vector<Interval> intervals;   // for interval_union

  static Hypothesis left_ray(double theta0) { return {Kind::left_ray, theta0, {}}; }
  static Hypothesis right_ray(double theta0) { return {Kind::right_ray, theta0, {}}; }
  static Hypothesis singleton(double theta0) { return {Kind::singleton, theta0, {}}; }
  static Hypothesis interval_union(std::vector<Interval> xs);
};

struct SupportValues {
  double strong;  // int_C dH
  double weak;    // sup_{theta in C} 2 min(H, 1-H)
};

SupportValues support_values(const ConfDist& cd, const Hypothesis& hyp);

}  // namespace cdcomb
