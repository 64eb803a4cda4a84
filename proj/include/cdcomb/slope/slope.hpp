#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cdcomb/cd/conf_dist.hpp"

namespace cdcomb {

enum class TailSide { left, right };

/// Empirical Bahadur-slope estimate on one side: per-n Monte Carlo means of
/// -(1/n) log H(theta0 - eps) (left) or -(1/n) log(1 - H(theta0 + eps))
/// (right), extrapolated to n = inf by least squares on a + b/n.
struct SlopeEstimate {
  double epsilon = 0.0;
  TailSide side = TailSide::left;
  std::vector<int> n_schedule;
  std::vector<double> values;      // per-n mean
  std::vector<double> std_errors;  // per-n Monte Carlo standard error
  double extrapolated = 0.0;       // fitted intercept a
  double extrapolated_se = 0.0;    // propagated MC error of a
  bool clamped = false;            // some tail hit the log-space clamp (-745)
};

struct SlopePair {
  SlopeEstimate left;
  SlopeEstimate right;
};

/// `factory(n, rep)` must build a seed-deterministic CD realization with true
/// parameter theta0 and per-study size n. Tails are read through the CD's
/// log-space evaluators.
SlopePair slope_estimate(const std::function<ConfDist(int n, std::uint64_t rep)>& factory,
                         double theta0, double epsilon, std::vector<int> n_schedule, int reps);

struct ComponentSlope {
  double s_left;
  double s_right;
  double lambda;  // n_j / n_1
};

struct SlopeBoundReport {
  double bound_left = 0.0;   // sum lambda_j S_j(-eps) / sum lambda_j
  double bound_right = 0.0;
  double combined_left = 0.0;
  double combined_right = 0.0;
  double combined_left_se = 0.0;
  double combined_right_se = 0.0;
  bool exceeds_left = false;   // combined > bound beyond extrapolation error
  bool exceeds_right = false;
  bool attains_left = false;   // within rel_tol of the bound
  bool attains_right = false;
};

SlopeBoundReport slope_bound_report(std::span<const ComponentSlope> components,
                                    const SlopePair& combined, double rel_tol = 0.10);

}  // namespace cdcomb
