#pragma once

#include <span>

#include "cdcomb/numkernel/family.hpp"
#include "cdcomb/numkernel/grid_cdf.hpp"

namespace cdcomb::numkernel {

/// Number of convolution grid points: CDF_GRID_POINTS env override, else 2^14.
int default_grid_points();

struct ConvolutionConfig {
  int points = 0;           // 0 -> default_grid_points()
  double tail_prob = 1e-10; // per-summand support truncation quantile
};

/// CDF of sum_j w_j Y_j with Y_j i.i.d. ~ family, w_1 = 1, w_j in [0,1].
/// Zero weights drop their term exactly. std_normal uses the closed normal
/// form sampled onto the grid; other families use FFT density convolution on
/// a uniform grid spanning the summand-wise tail_prob quantile bounds,
/// trapezoid-accumulated and renormalized.
GridCdf weighted_convolution_cdf(const DistFamily& family, std::span<const double> weights,
                                 ConvolutionConfig cfg = {});

}  // namespace cdcomb::numkernel
