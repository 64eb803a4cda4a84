#pragma once

#include <span>

namespace cdcomb::numkernel {

inline constexpr double kLogClamp = -745.0;  // log of smallest positive double
inline constexpr double kTailTol = 1e-15;    // probability clamp for combiner inputs

double norm_cdf(double z);
double norm_sf(double z);
double norm_density(double z);
double norm_quantile(double p);

/// log Phi(z), stable for arbitrarily deep lower tails (asymptotic Mills
/// expansion below z = -30, erfc-based otherwise).
double log_norm_cdf(double z);
inline double log_norm_sf(double z) { return log_norm_cdf(-z); }

/// Inverse of log_norm_cdf: z such that log Phi(z) = lp, for lp <= log(1/2).
/// Works for lp far below the double underflow threshold of Phi itself.
double norm_quantile_from_log(double lp);

/// log(sum exp(x_i)) over a small span.
double logsumexp(std::span<const double> xs);

/// Tails of the chi-squared distribution with an even number 2L of degrees of
/// freedom, exact Poisson-sum form, evaluated in log space.
///   log P(chi^2_{2L} > x)  given x >= 0
double log_chi2_even_sf(int L, double x);
///   log P(chi^2_{2L} <= x) given log(x); stable for x near 0.
double log_chi2_even_cdf_from_log(int L, double log_x);

}  // namespace cdcomb::numkernel
