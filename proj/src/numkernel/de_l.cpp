#include "cdcomb/numkernel/de_l.hpp"

#include <cmath>

#include "cdcomb/error.hpp"
#include "cdcomb/numkernel/special.hpp"

namespace cdcomb::numkernel {

double de_l_log_tail(const TailPoly& v, double t) {
  if (t < 0.0) throw ParameterError("de_l_log_tail: t must be >= 0");
  return std::log(0.5 * v.eval(t)) - t;
}

double de_l_cdf(const TailPoly& v, double t) {
  double a = std::abs(t);
  double tail = 0.5 * v.eval(a) * std::exp(-a);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double de_l_cdf(int levels, double t) { return de_l_cdf(de_tail_poly(levels), t); }

double de_l_density(const TailPoly& v, double t) {
  // d/dt [1 - (1/2) V(t) e^{-t}] = (1/2)(V(t) - V'(t)) e^{-t}, symmetric in t.
  double a = std::abs(t);
  return 0.5 * (v.eval(a) - v.eval_derivative(a)) * std::exp(-a);
}

double de_l_quantile(const TailPoly& v, double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("de_l_quantile: p must be in (0,1)");
  if (p == 0.5) return 0.0;
  // Work on the upper half by symmetry: find t >= 0 with tail = 1 - p*.
  bool lower = p < 0.5;
  double tail_target = lower ? p : 1.0 - p;
  double log_target = std::log(tail_target);

  double hi = 1.0;
  while (de_l_log_tail(v, hi) > log_target && hi < 1e6) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (de_l_log_tail(v, mid) > log_target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * (1.0 + std::abs(hi))) break;
  }
  double t = 0.5 * (lo + hi);
  return lower ? -t : t;
}

double de_l_quantile(int levels, double p) { return de_l_quantile(de_tail_poly(levels), p); }

}  // namespace cdcomb::numkernel
