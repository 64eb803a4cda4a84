#pragma once

#include <cstdint>
#include <vector>

#include "cdcomb/cd/conf_dist.hpp"
#include "cdcomb/combine/combine.hpp"

namespace cdcomb::studies {

struct PointCloud2D {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
};

/// All C(n,3) triangle areas |det(t1 t2 t3)|/2 with t_l = (1, x_l, y_l)^T.
std::vector<double> oja_triangle_areas(const PointCloud2D& cloud);

/// Oja's robust bivariate scale: median of all C(n,3) triangle areas (mean of
/// the two central order statistics for even counts).
double oja_scale(const PointCloud2D& cloud);

/// Bootstrap aCD (reflected) of the Oja scale of one dataset; exposed so the
/// split-and-combine path and the plain path share one implementation.
/// area_evals, when given, accumulates the number of triangle-area
/// evaluations spent in the bootstrap loop.
ConfDist oja_bootstrap_acd(const PointCloud2D& cloud, int boot_reps, std::uint64_t seed,
                           std::uint64_t stream, long long* area_evals = nullptr);

struct SplitCombineConfig {
  int pieces = 1;           // k
  int boot_reps = 5000;     // B per piece
  std::uint64_t seed = 1;
  CombinerSpec combiner{};  // DE by default
};

struct SplitCombineReport {
  ConfDist cd;
  std::vector<std::size_t> piece_sizes;
  long long triangles_per_full_statistic = 0;  // C(n,3)
  long long bootstrap_area_evals = 0;          // sum over pieces of B * C(m_j,3)
};

/// Random split (seeded permutation, contiguous near-equal chunks; k = 1
/// keeps the natural order so the degenerate split is bit-identical to the
/// plain bootstrap), per-piece Oja-scale bootstrap aCDs, then CD combination.
SplitCombineReport split_combine_bootstrap(const PointCloud2D& cloud,
                                           const SplitCombineConfig& cfg);

/// The simulated heavy-tailed demo cloud: observation s is
/// (z1 + z2, z1 - z2) with z1 ~ Cauchy(0,1), z2 ~ Cauchy(1,1.3).
PointCloud2D make_cauchy_cloud(int n, std::uint64_t seed);

}  // namespace cdcomb::studies
