#include "cdcomb/cd/conf_dist.hpp"

#include <algorithm>
#include <cmath>

#include "cdcomb/error.hpp"
#include "cdcomb/numkernel/special.hpp"

namespace cdcomb {

using numkernel::kLogClamp;

struct ConfDist::Impl {
  Callables fns;
  Interval support;
  Exactness exactness = Exactness::asymptotic;
  CdMeta meta;
};

ConfDist ConfDist::from_callables(Callables c, Interval support, Exactness ex, CdMeta meta) {
  if (!c.cdf) throw InputError("ConfDist: cdf callable is required");
  auto impl = std::make_shared<Impl>();
  impl->fns = std::move(c);
  impl->support = support;
  impl->exactness = ex;
  impl->meta = std::move(meta);
  return ConfDist(std::move(impl));
}

ConfDist ConfDist::location_scale(numkernel::DistFamily f, double loc, double scale,
                                  Exactness ex, CdMeta meta) {
  if (!(scale > 0.0)) throw ParameterError("ConfDist::location_scale: scale must be > 0");
  Callables c;
  c.cdf = [f, loc, scale](double y) { return numkernel::cdf(f, (y - loc) / scale); };
  c.quantile = [f, loc, scale](double p) { return loc + scale * numkernel::quantile(f, p); };
  c.density = [f, loc, scale](double y) {
    return numkernel::density(f, (y - loc) / scale) / scale;
  };
  c.log_cdf = [f, loc, scale](double y) { return numkernel::log_cdf(f, (y - loc) / scale); };
  c.log_sf = [f, loc, scale](double y) { return numkernel::log_sf(f, (y - loc) / scale); };
  Interval base = numkernel::support(f);
  Interval sup{loc + scale * base.lo, loc + scale * base.hi};
  if (meta.shape == ShapeClass::other) meta.shape = ShapeClass::location_scale;
  if (!meta.scale) meta.scale = scale;
  return from_callables(std::move(c), sup, ex, std::move(meta));
}

ConfDist ConfDist::from_grid(numkernel::GridCdf grid, Exactness ex, CdMeta meta) {
  auto g = std::make_shared<numkernel::GridCdf>(std::move(grid));
  Callables c;
  c.cdf = [g](double y) {
    // spec: queries outside the grid clamp to tail_tol / 1 - tail_tol
    double v = g->cdf(y);
    if (y < g->grid().front()) return std::min(v, numkernel::kTailTol);
    if (y > g->grid().back()) return std::max(v, 1.0 - numkernel::kTailTol);
    return v;
  };
  c.quantile = [g](double p) { return g->quantile(p); };
  c.density = [g](double y) { return g->density(y); };
  Interval sup = g->range();
  return from_callables(std::move(c), sup, ex, std::move(meta));
}

double ConfDist::cdf(double y) const { return impl_->fns.cdf(y); }

double ConfDist::log_cdf(double y) const {
  if (impl_->fns.log_cdf) return impl_->fns.log_cdf(y);
  double p = cdf(y);
  return p > 0.0 ? std::log(p) : kLogClamp;
}

double ConfDist::log_sf(double y) const {
  if (impl_->fns.log_sf) return impl_->fns.log_sf(y);
  double s = 1.0 - cdf(y);
  return s > 0.0 ? std::log(s) : kLogClamp;
}

double ConfDist::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("ConfDist::quantile: p must be in (0,1)");
  if (impl_->fns.quantile) return impl_->fns.quantile(p);

  // Bracketed bisection on the (monotone) cdf.
  double center = impl_->meta.point_estimate.value_or(0.0);
  double scale = impl_->meta.scale.value_or(1.0);
  Interval sup = impl_->support;

  double lo, hi;
  if (std::isfinite(sup.lo)) {
    lo = sup.lo;
  } else {
    lo = center - scale;
    double step = scale;
    while (cdf(lo) > p && step < 1e12 * scale) {
      step *= 2.0;
      lo = center - step;
    }
  }
  if (std::isfinite(sup.hi)) {
    hi = sup.hi;
  } else {
    hi = center + scale;
    double step = scale;
    while (cdf(hi) < p && step < 1e12 * scale) {
      step *= 2.0;
      hi = center + step;
    }
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(lo) + std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

double ConfDist::density(double y) const {
  if (impl_->fns.density) return impl_->fns.density(y);
  double h = 1e-5 * std::max(impl_->meta.scale.value_or(1.0), 1e-3);
  double a = std::max(y - h, impl_->support.lo);
  double b = std::min(y + h, impl_->support.hi);
  if (!(b > a)) return 0.0;
  return (cdf(b) - cdf(a)) / (b - a);
}

Interval ConfDist::support() const { return impl_->support; }
Exactness ConfDist::exactness() const { return impl_->exactness; }
const CdMeta& ConfDist::meta() const { return impl_->meta; }

}  // namespace cdcomb
