#include "cdcomb/numkernel/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "cdcomb/error.hpp"
#include "cdcomb/numkernel/special.hpp"

namespace cdcomb::numkernel {

namespace {

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// Linear convolution of two real sequences via r2c/c2r FFT, zero padded.
std::vector<double> fft_convolve(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t out_len = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < out_len) n <<= 1;
  const std::size_t nc = n / 2 + 1;

  double* ta = fftw_alloc_real(n);
  double* tb = fftw_alloc_real(n);
  fftw_complex* fa = fftw_alloc_complex(nc);
  fftw_complex* fb = fftw_alloc_complex(nc);

  std::fill(ta, ta + n, 0.0);
  std::fill(tb, tb + n, 0.0);
  std::copy(a.begin(), a.end(), ta);
  std::copy(b.begin(), b.end(), tb);

  fftw_plan pa, pb, pi;
  {
    // FFTW planning is not thread safe; execution of distinct plans is.
    std::lock_guard<std::mutex> lock(fftw_mutex());
    pa = fftw_plan_dft_r2c_1d(static_cast<int>(n), ta, fa, FFTW_ESTIMATE);
    pb = fftw_plan_dft_r2c_1d(static_cast<int>(n), tb, fb, FFTW_ESTIMATE);
    pi = fftw_plan_dft_c2r_1d(static_cast<int>(n), fa, ta, FFTW_ESTIMATE);
  }
  fftw_execute(pa);
  fftw_execute(pb);
  for (std::size_t i = 0; i < nc; ++i) {
    double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
    double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
    fa[i][0] = re;
    fa[i][1] = im;
  }
  fftw_execute(pi);

  std::vector<double> out(out_len);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = ta[i] * scale;

  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(pi);
  }
  fftw_free(ta);
  fftw_free(tb);
  fftw_free(fa);
  fftw_free(fb);
  return out;
}

struct SampledDensity {
  double lo = 0.0;
  std::vector<double> values;  // density samples at lo + i*step
};

// Density of w*Y sampled on a step grid over its truncated support.
SampledDensity sample_scaled_density(const DistFamily& f, double w, double step, double tail) {
  double qlo = quantile(f, tail);
  double qhi = quantile(f, 1.0 - tail);
  SampledDensity s;
  s.lo = std::floor(w * qlo / step) * step;
  double hi = std::ceil(w * qhi / step) * step;
  std::size_t count = static_cast<std::size_t>(std::llround((hi - s.lo) / step)) + 1;
  s.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    double x = s.lo + static_cast<double>(i) * step;
    s.values[i] = density(f, x / w) / w;
  }
  return s;
}

}  // namespace

int default_grid_points() {
  if (const char* env = std::getenv("CDF_GRID_POINTS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 16) return static_cast<int>(v);
  }
  return 1 << 14;
}

GridCdf weighted_convolution_cdf(const DistFamily& family, std::span<const double> weights,
                                 ConvolutionConfig cfg) {
  if (weights.empty()) throw InputError("weighted_convolution_cdf: empty weight vector");
  if (weights[0] != 1.0) throw InputError("weighted_convolution_cdf: w_1 must equal 1");
  for (double w : weights)
    if (!(w >= 0.0 && w <= 1.0)) throw ParameterError("weighted_convolution_cdf: weights must lie in [0,1]");

  std::vector<double> active;
  for (double w : weights)
    if (w > 0.0) active.push_back(w);

  const int npts = cfg.points > 0 ? cfg.points : default_grid_points();
  const double tail = cfg.tail_prob;

  if (family.kind == DistFamily::Kind::std_normal) {
    double var = 0.0;
    for (double w : active) var += w * w;
    double sd = std::sqrt(var);
    double lo = sd * norm_quantile(tail);
    double hi = -lo;
    std::vector<double> xs(npts), vs(npts);
    for (int i = 0; i < npts; ++i) {
      xs[i] = lo + (hi - lo) * i / (npts - 1);
      vs[i] = norm_cdf(xs[i] / sd);
    }
    return GridCdf(std::move(xs), std::move(vs));
  }

  // Total support bound: sum of per-summand truncated supports.
  double lo_tot = 0.0, hi_tot = 0.0;
  for (double w : active) {
    lo_tot += w * quantile(family, tail);
    hi_tot += w * quantile(family, 1.0 - tail);
  }
  const double step = (hi_tot - lo_tot) / (npts - 1);

  SampledDensity acc = sample_scaled_density(family, active[0], step, tail);
  for (std::size_t j = 1; j < active.size(); ++j) {
    SampledDensity next = sample_scaled_density(family, active[j], step, tail);
    std::vector<double> conv = fft_convolve(acc.values, next.values);
    for (auto& v : conv) v *= step;  // discrete convolution -> density scale
    acc.lo += next.lo;
    acc.values = std::move(conv);
  }

  // Cumulative trapezoid, renormalized to end at exactly 1.
  const std::size_t m = acc.values.size();
  std::vector<double> xs(m), vs(m);
  double run = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    xs[i] = acc.lo + static_cast<double>(i) * step;
    if (i > 0) run += 0.5 * (std::max(acc.values[i - 1], 0.0) + std::max(acc.values[i], 0.0)) * step;
    vs[i] = run;
  }
  if (!(run > 0.0)) throw NumericError("weighted_convolution_cdf: zero total mass");
  for (auto& v : vs) v /= run;
  return GridCdf(std::move(xs), std::move(vs));
}

}  // namespace cdcomb::numkernel
