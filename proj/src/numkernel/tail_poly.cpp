#include "cdcomb/numkernel/tail_poly.hpp"

#include <cmath>

#include "cdcomb/error.hpp"

namespace cdcomb::numkernel {

namespace {

// One recursion step over a generic coefficient ring (Rational or double).
// p holds the coefficients of V_{k-1}; returns those of V_k.
template <typename Coef>
std::vector<Coef> tail_poly_step(const std::vector<Coef>& p) {
  const int deg = static_cast<int>(p.size()) - 1;

  // q = p - p'
  std::vector<Coef> q(p);
  for (int j = 0; j < deg; ++j) q[j] -= Coef(j + 1) * p[j + 1];

  // out accumulates 2 V_k term by term; degree grows by one.
  std::vector<Coef> out(p.size() + 1, Coef(0));

  // term 1: V_{k-1}(t)
  for (int j = 0; j <= deg; ++j) out[j] += p[j];

  // term 2: int_0^t q(s) ds  (polynomial antiderivative)
  for (int j = 0; j <= deg; ++j) out[j + 1] += q[j] / Coef(j + 1);

  // moments m_k = int_0^inf s^k e^{-2s} ds = k! / 2^{k+1}
  std::vector<Coef> moment(p.size() + 1);
  {
    Coef fact(1);
    Coef pow2(2);
    for (int k = 0; k <= deg + 1; ++k) {
      if (k > 0) fact *= Coef(k);
      moment[k] = fact / pow2;
      pow2 *= Coef(2);
    }
  }

  // term 3a: int_0^inf q(s) e^{-2s} ds  (constant in t)
  for (int j = 0; j <= deg; ++j) out[0] += q[j] * moment[j];

  // term 3b: int_0^inf V_{k-1}(t+s) e^{-2s} ds, binomial expansion of (t+s)^i
  std::vector<std::vector<Coef>> binom(p.size(), std::vector<Coef>(p.size(), Coef(0)));
  for (std::size_t i = 0; i < p.size(); ++i) {
    binom[i][0] = Coef(1);
    for (std::size_t m = 1; m <= i; ++m)
      binom[i][m] = binom[i - 1][m - 1] + (m <= i - 1 ? binom[i - 1][m] : Coef(0));
  }
  for (int i = 0; i <= deg; ++i)
    for (int m = 0; m <= i; ++m) out[m] += p[i] * binom[i][m] * moment[i - m];

  for (auto& c : out) c /= Coef(2);
  return out;
}

}  // namespace

double TailPoly::eval(double t) const {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
  return v;
}

double TailPoly::eval_derivative(double t) const {
  double v = 0.0;
  for (int j = degree(); j >= 1; --j) v = v * t + static_cast<double>(j) * coeffs[j];
  return v;
}

TailPoly de_tail_poly(int levels, int exact_max) {
  if (levels < 1) throw ParameterError("de_tail_poly: L must be >= 1");

  TailPoly result;
  result.level = levels;

  std::vector<Rational> exact{Rational(1)};
  int k = 1;
  for (; k < levels && k < exact_max; ++k) exact = tail_poly_step(exact);

  if (k == levels || levels <= exact_max) {
    result.exact = true;
    result.exact_coeffs = exact;
    result.coeffs.reserve(exact.size());
    for (const auto& c : exact) result.coeffs.push_back(static_cast<double>(c));
    return result;
  }

  // continue in floating point above exact_max
  std::vector<double> coeffs;
  coeffs.reserve(exact.size());
  for (const auto& c : exact) coeffs.push_back(static_cast<double>(c));
  for (; k < levels; ++k) coeffs = tail_poly_step(coeffs);
  result.exact = false;
  result.coeffs = std::move(coeffs);
  return result;
}

}  // namespace cdcomb::numkernel
