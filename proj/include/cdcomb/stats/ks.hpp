#pragma once

#include <span>

namespace cdcomb::stats {

struct KsResult {
  double statistic;
  double p_value;
};

/// One-sample Kolmogorov-Smirnov test against U(0,1). p-value via the
/// asymptotic Kolmogorov series with Stephens' finite-sample correction.
KsResult ks_uniform(std::span<const double> values);

double ks_pvalue(double d, std::size_t n);

}  // namespace cdcomb::stats
