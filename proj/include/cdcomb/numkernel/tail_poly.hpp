#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cdcomb::numkernel {

using Rational = boost::multiprecision::cpp_rational;

/// Highest L for which the recursion is run in exact rational arithmetic by
/// default; beyond it coefficients continue in double precision and the
/// result is flagged `exact = false`.
inline constexpr int kExactTailPolyMax = 20;

/// The polynomial V_L defining the DE_L tails: for t >= 0,
///   1 - DE_L(t) = DE_L(-t) = (1/2) V_L(t) e^{-t},
/// with deg V_L = L - 1 and V_L(0) = 1.
struct TailPoly {
  int level = 1;                       // L
  std::vector<double> coeffs;          // coeffs[j] multiplies t^j
  std::vector<Rational> exact_coeffs;  // populated when exact == true
  bool exact = true;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  /// V_L(t) by Horner; all coefficients are positive so this is stable.
  double eval(double t) const;
  /// V_L'(t).
  double eval_derivative(double t) const;
};

/// Runs the tail recursion
///   2 V_k(t) = V_{k-1}(t) + int_0^t [V_{k-1} - V_{k-1}'](s) ds
///            + int_0^inf [V_{k-1}(s) + V_{k-1}(t+s) - V_{k-1}'(s)] e^{-2s} ds
/// in exact rational arithmetic (moment identity
/// int_0^inf s^k e^{-2s} ds = k!/2^{k+1}; V_{k-1}(t+s) expanded binomially),
/// switching to double coefficients above `exact_max`.
TailPoly de_tail_poly(int levels, int exact_max = kExactTailPolyMax);

}  // namespace cdcomb::numkernel
