#pragma once

#include <functional>
#include <span>

#include "cdcomb/cd/conf_dist.hpp"

namespace cdcomb {

/// Exact CD for a normal mean: H(y) = F_{t_{n-1}}((y - xbar)/(s/sqrt(n))).
ConfDist cd_normal_mean(double xbar, double s, int n);

/// Exact CD for a normal variance: H(y) = 1 - F_{chi2_{n-1}}((n-1) s2 / y),
/// supported on (0, inf).
ConfDist cd_normal_variance(double s2, int n);

/// First-order normal aCD from a point estimate and standard error:
/// H(y) = Phi((y - theta_hat)/se).
ConfDist cd_from_point_se(double theta_hat, double se);

/// Wraps a monotone p-value function sampled on [lo, hi] as a grid-backed
/// aCD. Tiny non-monotonicities (total violation <= 1e-9) are repaired
/// isotonically; anything larger, or a grid that fails to reach 0 and 1
/// within 1e-3, is rejected.
ConfDist cd_from_pvalue_function(const std::function<double(double)>& p, double lo, double hi,
                                 int npoints = 1025);

enum class BootstrapMode { reflected, raw };

/// aCD from a bootstrap sample of the estimator. reflected:
/// H(y) = (1/B) #{theta_B >= 2 theta_hat - y}; raw: H(y) = (1/B) #{theta_B <= y}.
/// Closed ">=" tie convention at atoms, then a continuity smoothing: the CDF
/// interpolates linearly through the upper step corners (a_k, c_k), anchored
/// at zero one inter-atom gap below the smallest atom.
ConfDist cd_from_bootstrap(std::span<const double> boot_stats, double theta_hat,
                           BootstrapMode mode);

}  // namespace cdcomb
