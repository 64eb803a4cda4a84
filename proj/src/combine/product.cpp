#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "cdcomb/combine/combine.hpp"
#include "cdcomb/error.hpp"
#include "cdcomb/numkernel/special.hpp"

namespace cdcomb {

namespace {

constexpr double kUMin = 1e-13;
constexpr double kLogFloor = -690.0;  // product densities below e^-690 are trimmed

// Quadrature state. The product density is integrated through a double
// substitution y = Q_ref(Phi(t)): the reference CD maps the parameter line
// onto (0,1) (so unbounded and heavy-tailed supports need no special
// casing), and the normal warp removes the endpoint boundary layers that a
// plain uniform-in-probability rule suffers from:
//   int g(y) dy = int w(Phi(t)) phi(t) dt,
//   w(u) = g(Q_ref(u)) / h_ref(Q_ref(u)).
struct ProductState {
  std::vector<ConfDist> parts;
  std::size_t ref = 0;
  ProductVariant variant = ProductVariant::location;

  std::vector<double> ts;    // odd count, uniform in t
  std::vector<double> wv;    // shifted integrand exp(log w + log phi - shift)
  std::vector<double> cum;   // cumulative Simpson at even nodes
  double shift = 0.0;
  double total = 0.0;        // integral of wv over t
  double log_total = 0.0;    // log int g(y) dy

  double log_integrand(double t) const {
    double u = numkernel::norm_cdf(t);
    u = std::clamp(u, kUMin, 1.0 - kUMin);
    double y = parts[ref].quantile(u);
    double lw = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i == ref) continue;
      double d = parts[i].density(y);
      if (!(d > 0.0)) return -std::numeric_limits<double>::infinity();
      lw += std::log(d);
    }
    if (variant == ProductVariant::scale)
      lw += (static_cast<double>(parts.size()) - 1.0) * std::log(y);
    return lw - 0.5 * t * t - 0.9189385332046727;  // + log phi(t)
  }

  double h() const { return ts[1] - ts[0]; }

  // integral of the local Simpson quadratic from the cell's left even node
  double cell_integral(std::size_t k2, double t) const {
    double hh = h();
    double xi = (t - ts[k2]) / hh;
    double w0 = wv[k2], w1 = wv[k2 + 1], w2 = wv[k2 + 2];
    double xi2 = xi * xi, xi3 = xi2 * xi;
    return hh * (w0 * (xi3 / 6.0 - 0.75 * xi2 + xi) + w1 * (xi2 - xi3 / 3.0) +
                 w2 * (xi3 / 6.0 - 0.25 * xi2));
  }

  double cumulative(double t) const {
    if (t <= ts.front()) return 0.0;
    if (t >= ts.back()) return total;
    std::size_t cell = static_cast<std::size_t>((t - ts.front()) / (2.0 * h()));
    std::size_t k2 = std::min(2 * cell, ts.size() - 3);
    return std::clamp(cum[std::min(cell, cum.size() - 1)] + cell_integral(k2, t), 0.0, total);
  }

  double cdf(double y) const {
    double u = std::clamp(parts[ref].cdf(y), kUMin, 1.0 - kUMin);
    return cumulative(numkernel::norm_quantile(u)) / total;
  }

  double quantile(double p) const {
    double target = p * total;
    double lo = ts.front(), hi = ts.back();
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      if (cumulative(mid) < target)
        lo = mid;
      else
        hi = mid;
    }
    double u = std::clamp(numkernel::norm_cdf(0.5 * (lo + hi)), kUMin, 1.0 - kUMin);
    return parts[ref].quantile(u);
  }

  double density(double y) const {
    double lw = 0.0;
    for (const auto& part : parts) {
      double d = part.density(y);
      if (!(d > 0.0)) return 0.0;
      lw += std::log(d);
    }
    if (variant == ProductVariant::scale) {
      if (!(y > 0.0)) return 0.0;
      lw += (static_cast<double>(parts.size()) - 1.0) * std::log(y);
    }
    return std::exp(lw - log_total);
  }
};

}  // namespace

ConfDist combine_product(std::span<const ConfDist> cds, ProductVariant variant) {
  if (cds.empty()) throw InputError("combine_product: no input CDs");
  if (cds.size() == 1) return cds[0];

  Interval common = cds[0].support();
  for (const auto& cd : cds) {
    common.lo = std::max(common.lo, cd.support().lo);
    common.hi = std::min(common.hi, cd.support().hi);
  }
  if (!(common.lo < common.hi))
    throw InputError("combine_product: input CDs have non-overlapping supports");
  if (variant == ProductVariant::scale && common.lo < 0.0)
    throw InputError("combine_product: scale variant requires a positive parameter support");

  auto st = std::make_shared<ProductState>();
  st->parts.assign(cds.begin(), cds.end());
  st->variant = variant;

  // Reference = narrowest input; the others vary slowly along its quantiles.
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < st->parts.size(); ++i) {
    double w = st->parts[i].iqr();
    if (w < best) {
      best = w;
      st->ref = i;
    }
  }

  const double t_max = -numkernel::norm_quantile(kUMin);
  const int panels = 1 << 13;  // even; 2*panels + 1 nodes
  const int m = 2 * panels + 1;
  st->ts.resize(m);
  std::vector<double> logw(m);
  double peak = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    st->ts[i] = -t_max + 2.0 * t_max * i / (m - 1);
    logw[i] = st->log_integrand(st->ts[i]);
    peak = std::max(peak, logw[i]);
  }
  if (!std::isfinite(peak))
    throw NumericError("combine_product: density product vanishes on the common support");

  st->shift = peak;
  st->wv.resize(m);
  for (int i = 0; i < m; ++i) {
    double e = logw[i] - peak;
    st->wv[i] = e > kLogFloor ? std::exp(e) : 0.0;
  }

  st->cum.resize(panels + 1);
  st->cum[0] = 0.0;
  double hh = st->h();
  for (int k = 0; k < panels; ++k)
    st->cum[k + 1] =
        st->cum[k] + hh * (st->wv[2 * k] + 4.0 * st->wv[2 * k + 1] + st->wv[2 * k + 2]) / 3.0;
  st->total = st->cum.back();
  if (!(st->total > 0.0) || !std::isfinite(st->total))
    throw NumericError("combine_product: density product has zero mass on the common support");
  st->log_total = st->shift + std::log(st->total);

  bool exact = true;
  for (const auto& cd : st->parts) {
    bool shape_ok = variant == ProductVariant::location
                        ? cd.meta().shape == ShapeClass::location_scale
                        : cd.meta().shape == ShapeClass::scale;
    exact = exact && shape_ok && cd.exactness() == Exactness::exact;
  }

  ConfDist::Callables fns;
  fns.cdf = [st](double y) { return st->cdf(y); };
  fns.quantile = [st](double p) { return st->quantile(p); };
  fns.density = [st](double y) { return st->density(y); };

  CdMeta meta;
  meta.family = variant == ProductVariant::location
                    ? "H_P(L=" + std::to_string(st->parts.size()) + ")"
                    : "H_P_scale(L=" + std::to_string(st->parts.size()) + ")";
  meta.point_estimate = st->quantile(0.5);
  meta.scale = std::max(st->quantile(0.75) - st->quantile(0.25), 1e-12);
  return ConfDist::from_callables(std::move(fns), common,
                                  exact ? Exactness::exact : Exactness::asymptotic,
                                  std::move(meta));
}

}  // namespace cdcomb
