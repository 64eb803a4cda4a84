#pragma once

// Test-side oracles, deliberately independent of the library's FFT/closed-form
// evaluation paths: direct O(N^2) density convolution on a uniform grid.

#include <cmath>
#include <vector>

namespace oracles {

struct GridFn {
  double lo;
  double step;
  std::vector<double> values;

  double at(double x) const {
    double pos = (x - lo) / step;
    if (pos <= 0.0) return values.front();
    if (pos >= static_cast<double>(values.size() - 1)) return values.back();
    std::size_t i = static_cast<std::size_t>(pos);
    double w = pos - static_cast<double>(i);
    return values[i] * (1.0 - w) + values[i + 1] * w;
  }
};

/// CDF of the L-fold Laplace convolution by direct trapezoid convolution of
/// densities on [-hw, hw] with n points.
inline GridFn laplace_convolution_cdf(int levels, double hw = 60.0, int n = 4001) {
  double step = 2.0 * hw / (n - 1);
  std::vector<double> base(n);
  for (int i = 0; i < n; ++i) {
    double x = -hw + i * step;
    base[i] = 0.5 * std::exp(-std::abs(x));
  }
  std::vector<double> dens = base;
  for (int l = 1; l < levels; ++l) {
    // both factors truncated to [-hw, hw]; result re-truncated to the same
    // window (kept mass is renormalized by the final cumulative step)
    std::vector<double> next(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        int k = i - j + (n - 1) / 2;
        if (k < 0 || k >= n) continue;
        acc += dens[j] * base[k];
      }
      next[i] = acc * step;
    }
    dens.swap(next);
  }
  GridFn cdf{-hw, step, std::vector<double>(n, 0.0)};
  double run = 0.0;
  for (int i = 1; i < n; ++i) {
    run += 0.5 * (dens[i - 1] + dens[i]) * step;
    cdf.values[i] = run;
  }
  for (auto& v : cdf.values) v /= run;
  return cdf;
}

}  // namespace oracles
