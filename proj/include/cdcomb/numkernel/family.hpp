#pragma once

#include <string>

#include "cdcomb/interval.hpp"

namespace cdcomb::numkernel {

/// One of the base distribution families used as combining kernels F0 and as
/// sampling laws. `param` carries the degrees of freedom (student_t,
/// chi_squared) or the convolution order L (de_convolved).
struct DistFamily {
  enum class Kind {
    std_normal,
    student_t,
    chi_squared,
    exp_standard,  // F(t) = 1 - e^{-t}, t >= 0
    exp_mirror,    // F(t) = e^{t},     t <= 0
    double_exp,    // standard Laplace
    de_convolved,  // L-fold Laplace convolution
  };

  Kind kind = Kind::std_normal;
  int param = 0;

  static DistFamily normal() { return {Kind::std_normal, 0}; }
  static DistFamily t(int df);
  static DistFamily chi_squared(int df);
  static DistFamily exp_standard() { return {Kind::exp_standard, 0}; }
  static DistFamily exp_mirror() { return {Kind::exp_mirror, 0}; }
  static DistFamily double_exp() { return {Kind::double_exp, 0}; }
  static DistFamily de_convolved(int levels);

  std::string label() const;
};

double cdf(const DistFamily& f, double t);
double quantile(const DistFamily& f, double p);
double density(const DistFamily& f, double t);
double log_cdf(const DistFamily& f, double t);
double log_sf(const DistFamily& f, double t);
Interval support(const DistFamily& f);

/// F0^{-1} evaluated from the log of its argument and the log of the
/// complement, exact in deep tails for the exp/Laplace kernels. `lu` and
/// `lsu` are log(u) and log(1-u).
double quantile_from_logs(const DistFamily& f, double lu, double lsu);

}  // namespace cdcomb::numkernel
