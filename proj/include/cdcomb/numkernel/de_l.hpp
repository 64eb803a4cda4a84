#pragma once

#include "cdcomb/numkernel/tail_poly.hpp"

namespace cdcomb::numkernel {

/// CDF of the L-fold convolution of the standard double exponential,
/// via the closed tail form (1/2) V_L(|t|) e^{-|t|}.
double de_l_cdf(const TailPoly& v, double t);
double de_l_cdf(int levels, double t);

/// log(1 - DE_L(t)) for t >= 0 == log DE_L(-t); exact in arbitrarily deep
/// tails (the only exponential factor is carried in log space).
double de_l_log_tail(const TailPoly& v, double t);

double de_l_density(const TailPoly& v, double t);

/// Monotone inverse by bracketed bisection; |roundtrip error| <= 1e-8.
double de_l_quantile(const TailPoly& v, double p);
double de_l_quantile(int levels, double p);

}  // namespace cdcomb::numkernel
