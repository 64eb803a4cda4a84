#include "cdcomb/studies/oja.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdcomb/cd/constructors.hpp"
#include "cdcomb/error.hpp"
#include "cdcomb/rng.hpp"

namespace cdcomb::studies {

namespace {
double median_of(std::vector<double>& v) {
  std::size_t m = v.size();
  auto mid = v.begin() + m / 2;
  std::nth_element(v.begin(), mid, v.end());
  double upper = *mid;
  if (m % 2 == 1) return upper;
  double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}
}  // namespace

std::vector<double> oja_triangle_areas(const PointCloud2D& cloud) {
  const std::size_t n = cloud.size();
  if (n < 3) throw InputError("oja: need at least 3 points");
  std::vector<double> areas;
  areas.reserve(n * (n - 1) * (n - 2) / 6);
  for (std::size_t i = 0; i + 2 < n; ++i)
    for (std::size_t j = i + 1; j + 1 < n; ++j) {
      double bx = cloud.x[j] - cloud.x[i];
      double by = cloud.y[j] - cloud.y[i];
      for (std::size_t k = j + 1; k < n; ++k) {
        double cx = cloud.x[k] - cloud.x[i];
        double cy = cloud.y[k] - cloud.y[i];
        areas.push_back(0.5 * std::abs(bx * cy - cx * by));
      }
    }
  return areas;
}

double oja_scale(const PointCloud2D& cloud) {
  std::vector<double> areas = oja_triangle_areas(cloud);
  return median_of(areas);
}

ConfDist oja_bootstrap_acd(const PointCloud2D& cloud, int boot_reps, std::uint64_t seed,
                           std::uint64_t stream, long long* area_evals) {
  if (boot_reps < 1) throw InputError("oja_bootstrap_acd: boot_reps must be >= 1");
  const std::size_t n = cloud.size();
  if (n < 3) throw InputError("oja_bootstrap_acd: need at least 3 points");

  double theta_hat = oja_scale(cloud);

  PointCloud2D resample;
  resample.x.resize(n);
  resample.y.resize(n);
  std::vector<double> boot_stats(boot_reps);
  const long long per_stat = static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
  for (int b = 0; b < boot_reps; ++b) {
    Rng rng = Rng::substream(seed, stream, static_cast<std::uint64_t>(b));
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t idx = static_cast<std::size_t>(rng.uniform_index(n));
      resample.x[i] = cloud.x[idx];
      resample.y[i] = cloud.y[idx];
    }
    boot_stats[b] = oja_scale(resample);
    if (area_evals) *area_evals += per_stat;
  }
  return cd_from_bootstrap(boot_stats, theta_hat, BootstrapMode::reflected);
}

SplitCombineReport split_combine_bootstrap(const PointCloud2D& cloud,
                                           const SplitCombineConfig& cfg) {
  const std::size_t n = cloud.size();
  if (cfg.pieces < 1) throw InputError("split_combine_bootstrap: k must be >= 1");
  if (static_cast<std::size_t>(cfg.pieces) * 3 > n)
    throw InputError("split_combine_bootstrap: pieces too small (need 3 points each)");
  if (cfg.boot_reps < 1) throw InputError("split_combine_bootstrap: B must be >= 1");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (cfg.pieces > 1) {
    Rng rng = Rng::substream(cfg.seed, /*stream=*/0xa11);
    for (std::size_t i = n - 1; i > 0; --i)
      std::swap(order[i], order[rng.uniform_index(i + 1)]);
  }

  SplitCombineReport report;
  report.triangles_per_full_statistic = static_cast<long long>(n) * (n - 1) * (n - 2) / 6;

  const std::size_t k = static_cast<std::size_t>(cfg.pieces);
  const std::size_t base = n / k, extra = n % k;
  std::vector<ConfDist> cds;
  std::size_t pos = 0;
  for (std::size_t piece = 0; piece < k; ++piece) {
    std::size_t len = base + (piece < extra ? 1 : 0);
    PointCloud2D sub;
    sub.x.reserve(len);
    sub.y.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
      sub.x.push_back(cloud.x[order[pos + i]]);
      sub.y.push_back(cloud.y[order[pos + i]]);
    }
    pos += len;
    report.piece_sizes.push_back(len);
    cds.push_back(oja_bootstrap_acd(sub, cfg.boot_reps, cfg.seed, /*stream=*/piece,
                                    &report.bootstrap_area_evals));
  }

  report.cd = cds.size() == 1 ? cds[0] : combine(cfg.combiner, cds);
  return report;
}

PointCloud2D make_cauchy_cloud(int n, std::uint64_t seed) {
  if (n < 1) throw InputError("make_cauchy_cloud: n must be >= 1");
  PointCloud2D cloud;
  cloud.x.reserve(n);
  cloud.y.reserve(n);
  Rng rng = Rng::substream(seed, /*stream=*/0xc10);
  for (int s = 0; s < n; ++s) {
    double z1 = rng.cauchy(0.0, 1.0);
    double z2 = rng.cauchy(1.0, 1.3);
    cloud.x.push_back(z1 + z2);
    cloud.y.push_back(z1 - z2);
  }
  return cloud;
}

}  // namespace cdcomb::studies
