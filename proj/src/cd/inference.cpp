#include "cdcomb/cd/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cdcomb/error.hpp"

namespace cdcomb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// mean = int_0^1 H^{-1}(u) du, composite Simpson on [eps, 1-eps].
std::optional<double> cd_mean(const ConfDist& cd) {
  constexpr double kEps = 1e-7;
  constexpr int kPanels = 1 << 12;  // even
  double a = kEps, b = 1.0 - kEps;
  double h = (b - a) / kPanels;
  double qa = cd.quantile(a), qb = cd.quantile(b);
  // Clipped-tail bound: |int_0^eps Q| <= eps |Q(eps)| for monotone Q.
  if (kEps * std::abs(qa) > 1e-6 || kEps * std::abs(qb) > 1e-6) return std::nullopt;
  double sum = qa + qb;
  for (int i = 1; i < kPanels; ++i)
    sum += (i % 2 == 1 ? 4.0 : 2.0) * cd.quantile(a + i * h);
  return sum * h / 3.0;
}

double cd_mode(const ConfDist& cd) {
  // coarse scan over the effective support, then golden-section refine
  double lo = cd.quantile(1e-4), hi = cd.quantile(1.0 - 1e-4);
  const int n = 2048;
  double best_x = lo, best_f = -1.0;
  for (int i = 0; i <= n; ++i) {
    double x = lo + (hi - lo) * i / n;
    double f = cd.density(x);
    if (f > best_f) {
      best_f = f;
      best_x = x;
    }
  }
  double step = (hi - lo) / n;
  double a = best_x - step, b = best_x + step;
  constexpr double kPhi = 0.6180339887498949;
  double x1 = b - kPhi * (b - a), x2 = a + kPhi * (b - a);
  double f1 = cd.density(x1), f2 = cd.density(x2);
  for (int it = 0; it < 80 && (b - a) > 1e-11 * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kPhi * (b - a);
      f2 = cd.density(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kPhi * (b - a);
      f1 = cd.density(x1);
    }
  }
  return 0.5 * (a + b);
}

// 2 min(H, 1-H) is nondecreasing below the median and nonincreasing above it.
double weak_at(const ConfDist& cd, double theta) {
  double h = cd.cdf(theta);
  return 2.0 * std::min(h, 1.0 - h);
}

double weak_over_interval(const ConfDist& cd, double lo, double hi, double med) {
  if (med >= lo && med <= hi) return 1.0;
  if (hi < med) return weak_at(cd, hi);
  return weak_at(cd, lo);
}
}  // namespace

PointEstimates point_estimates(const ConfDist& cd) {
  return {cd.median(), cd_mean(cd), cd_mode(cd)};
}

Interval confidence_interval(const ConfDist& cd, double alpha, IntervalKind kind) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParameterError("confidence_interval: alpha must be in (0,1)");
  switch (kind) {
    case IntervalKind::lower: return {-kInf, cd.quantile(1.0 - alpha)};
    case IntervalKind::upper: return {cd.quantile(alpha), kInf};
    case IntervalKind::two_sided:
      return {cd.quantile(alpha / 2.0), cd.quantile(1.0 - alpha / 2.0)};
  }
  throw ParameterError("confidence_interval: unknown kind");
}

Hypothesis Hypothesis::interval_union(std::vector<Interval> xs) {
  if (xs.empty()) throw InputError("Hypothesis: empty interval union");
  std::sort(xs.begin(), xs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i].lo <= xs[i].hi)) throw InputError("Hypothesis: malformed interval");
    if (i > 0 && xs[i].lo < xs[i - 1].hi)
      throw InputError("Hypothesis: intervals must be disjoint");
  }
  return {Kind::interval_union, 0.0, std::move(xs)};
}

SupportValues support_values(const ConfDist& cd, const Hypothesis& hyp) {
  double med = cd.median();
  switch (hyp.kind) {
    case Hypothesis::Kind::left_ray:
      return {cd.cdf(hyp.point), weak_over_interval(cd, -kInf, hyp.point, med)};
    case Hypothesis::Kind::right_ray:
      return {1.0 - cd.cdf(hyp.point), weak_over_interval(cd, hyp.point, kInf, med)};
    case Hypothesis::Kind::singleton:
      return {0.0, weak_at(cd, hyp.point)};
    case Hypothesis::Kind::interval_union: {
      double strong = 0.0, weak = 0.0;
      for (const auto& iv : hyp.intervals) {
        strong += cd.cdf(iv.hi) - cd.cdf(iv.lo);
        weak = std::max(weak, weak_over_interval(cd, iv.lo, iv.hi, med));
      }
      return {strong, weak};
    }
  }
  throw InputError("support_values: unknown hypothesis kind");
}

}  // namespace cdcomb
