#include "cdcomb/numkernel/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

#include "cdcomb/error.hpp"

namespace cdcomb::numkernel {

namespace {
const boost::math::normal_distribution<double> kStdNormal(0.0, 1.0);
constexpr double kHalfLog2Pi = 0.9189385332046727;  // log(2*pi)/2
}  // namespace

double norm_cdf(double z) { return boost::math::cdf(kStdNormal, z); }

double norm_sf(double z) { return boost::math::cdf(boost::math::complement(kStdNormal, z)); }

double norm_density(double z) { return std::exp(-0.5 * z * z - kHalfLog2Pi); }

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("normal quantile: p must be in (0,1)");
  return boost::math::quantile(kStdNormal, p);
}

double log_norm_cdf(double z) {
  if (z > -30.0) {
    // erfc underflows only near z = -37.5; below -30 switch to the expansion.
    double p = norm_cdf(z);
    if (p > 0.0) return std::log(p);
  }
  // Mills asymptotic: Phi(z) = phi(z)/|z| * (1 - 1/z^2 + 3/z^4 - 15/z^6 + ...)
  double x = -z;
  double x2 = x * x;
  double series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2);
  return -0.5 * x2 - kHalfLog2Pi - std::log(x) + std::log(series);
}

double norm_quantile_from_log(double lp) {
  constexpr double kLogHalf = -0.6931471805599453;
  if (lp > kLogHalf) throw ParameterError("norm_quantile_from_log: lp must be <= log(1/2)");
  if (lp > -30.0) return norm_quantile(std::exp(lp));
  // Solve log Phi(-x) = lp for x > 0. Fixed point of
  //   x = sqrt(-2 (lp + log(x) + log(2*pi)/2 - log(series)))
  double x = std::sqrt(-2.0 * lp);
  for (int it = 0; it < 50; ++it) {
    double x2 = x * x;
    double series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2);
    double next = std::sqrt(-2.0 * (lp + std::log(x) + kHalfLog2Pi - std::log(series)));
    if (std::abs(next - x) < 1e-13 * x) {
      x = next;
      break;
    }
    x = next;
  }
  return -x;
}

double logsumexp(std::span<const double> xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

double log_chi2_even_sf(int L, double x) {
  if (L < 1) throw ParameterError("log_chi2_even_sf: L must be >= 1");
  if (x <= 0.0) return 0.0;  // log(1)
  // P(chi^2_{2L} > x) = exp(-x/2) * sum_{k=0}^{L-1} (x/2)^k / k!
  double h = 0.5 * x;
  double log_h = std::log(h);
  double m = -std::numeric_limits<double>::infinity();
  double lgk = 0.0;  // log k!
  for (int k = 0; k < L; ++k) {
    if (k > 0) lgk += std::log(static_cast<double>(k));
    m = std::max(m, k * log_h - lgk);
  }
  double s = 0.0;
  lgk = 0.0;
  for (int k = 0; k < L; ++k) {
    if (k > 0) lgk += std::log(static_cast<double>(k));
    s += std::exp(k * log_h - lgk - m);
  }
  double lp = -h + m + std::log(s);
  return std::min(lp, 0.0);
}

double log_chi2_even_cdf_from_log(int L, double log_x) {
  if (L < 1) throw ParameterError("log_chi2_even_cdf_from_log: L must be >= 1");
  double log_h = log_x - std::log(2.0);
  if (log_h < -3.0) {
    // Lower regularized gamma series: P(L, h) = h^L e^{-h} / L! * sum_{k>=0} h^k L! / (L+1)...(L+k)
    double h = std::exp(log_h);
    double lgL = std::lgamma(L + 1.0);
    double term = 1.0, series = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= h / (L + k);
      series += term;
      if (term < 1e-18 * series) break;
    }
    return L * log_h - h - lgL + std::log(series);
  }
  double h = std::exp(log_h);
  double lsf = log_chi2_even_sf(L, 2.0 * h);
  // cdf = 1 - sf; here sf is not tiny, so plain log1p is fine
  return std::log1p(-std::exp(lsf));
}

}  // namespace cdcomb::numkernel
