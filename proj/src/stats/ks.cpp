#include "cdcomb/stats/ks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cdcomb/error.hpp"

namespace cdcomb::stats {

double ks_pvalue(double d, std::size_t n) {
  double sn = std::sqrt(static_cast<double>(n));
  double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

KsResult ks_uniform(std::span<const double> values) {
  if (values.empty()) throw InputError("ks_uniform: empty sample");
  std::vector<double> u(values.begin(), values.end());
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double x = std::clamp(u[i], 0.0, 1.0);
    d = std::max(d, (i + 1) / n - x);
    d = std::max(d, x - i / n);
  }
  return {d, ks_pvalue(d, u.size())};
}

}  // namespace cdcomb::stats
