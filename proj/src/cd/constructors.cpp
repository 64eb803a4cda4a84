#include "cdcomb/cd/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "cdcomb/error.hpp"
#include "cdcomb/numkernel/special.hpp"

namespace cdcomb {

using numkernel::DistFamily;

ConfDist cd_normal_mean(double xbar, double s, int n) {
  if (n < 2) throw ParameterError("cd_normal_mean: n must be >= 2");
  if (!(s > 0.0)) throw ParameterError("cd_normal_mean: s must be > 0");
  CdMeta meta;
  meta.family = "normal_mean";
  meta.sample_size = n;
  meta.point_estimate = xbar;
  return ConfDist::location_scale(DistFamily::t(n - 1), xbar, s / std::sqrt(double(n)),
                                  Exactness::exact, std::move(meta));
}

ConfDist cd_normal_variance(double s2, int n) {
  if (n < 2) throw ParameterError("cd_normal_variance: n must be >= 2");
  if (!(s2 > 0.0)) throw ParameterError("cd_normal_variance: s2 must be > 0");
  const double c = (n - 1) * s2;
  const boost::math::chi_squared_distribution<double> chi2(n - 1);

  ConfDist::Callables fns;
  fns.cdf = [c, chi2](double y) {
    if (y <= 0.0) return 0.0;
    return boost::math::cdf(boost::math::complement(chi2, c / y));
  };
  fns.quantile = [c, chi2](double p) { return c / boost::math::quantile(chi2, 1.0 - p); };
  fns.density = [c, chi2](double y) {
    if (y <= 0.0) return 0.0;
    return boost::math::pdf(chi2, c / y) * c / (y * y);
  };
  CdMeta meta;
  meta.family = "normal_variance";
  meta.sample_size = n;
  meta.point_estimate = c / boost::math::quantile(chi2, 0.5);
  meta.scale = s2;
  meta.shape = ShapeClass::scale;
  return ConfDist::from_callables(std::move(fns), Interval::positive_half_line(),
                                  Exactness::exact, std::move(meta));
}

ConfDist cd_from_point_se(double theta_hat, double se) {
  if (!(se > 0.0)) throw ParameterError("cd_from_point_se: se must be > 0");
  CdMeta meta;
  meta.family = "normal_acd";
  meta.point_estimate = theta_hat;
  meta.scale = se;
  return ConfDist::location_scale(DistFamily::normal(), theta_hat, se, Exactness::asymptotic,
                                  std::move(meta));
}

ConfDist cd_from_pvalue_function(const std::function<double(double)>& p, double lo, double hi,
                                 int npoints) {
  if (!(lo < hi)) throw InputError("cd_from_pvalue_function: need lo < hi");
  if (npoints < 16) throw InputError("cd_from_pvalue_function: need npoints >= 16");
  std::vector<double> xs(npoints), vs(npoints);
  for (int i = 0; i < npoints; ++i) {
    xs[i] = lo + (hi - lo) * i / (npoints - 1);
    vs[i] = p(xs[i]);
    if (!std::isfinite(vs[i]) || vs[i] < -1e-12 || vs[i] > 1.0 + 1e-12)
      throw ShapeError("cd_from_pvalue_function: values must lie in [0,1]");
  }
  double total_violation = 0.0;
  for (int i = 1; i < npoints; ++i) total_violation += std::max(0.0, vs[i - 1] - vs[i]);
  if (total_violation > 1e-9)
    throw ShapeError("cd_from_pvalue_function: input is not monotone (total violation " +
                     std::to_string(total_violation) + ")");
  // isotonic repair of numerical noise
  for (int i = 1; i < npoints; ++i) vs[i] = std::max(vs[i], vs[i - 1]);

  constexpr double kReachTol = 1e-3;
  if (vs.front() > kReachTol || vs.back() < 1.0 - kReachTol)
    throw ShapeError("cd_from_pvalue_function: sampled grid does not reach 0 and 1");

  CdMeta meta;
  meta.family = "pvalue_function";
  numkernel::GridCdf grid(std::move(xs), std::move(vs));
  meta.point_estimate = grid.quantile(0.5);
  meta.scale = grid.quantile(0.75) - grid.quantile(0.25);
  return ConfDist::from_grid(std::move(grid), Exactness::asymptotic, std::move(meta));
}

ConfDist cd_from_bootstrap(std::span<const double> boot_stats, double theta_hat,
                           BootstrapMode mode) {
  if (boot_stats.empty()) throw InputError("cd_from_bootstrap: empty bootstrap sample");

  std::vector<double> atoms(boot_stats.begin(), boot_stats.end());
  if (mode == BootstrapMode::reflected)
    for (auto& a : atoms) a = 2.0 * theta_hat - a;  // {theta_B >= 2 th - y} == {2 th - theta_B <= y}
  std::sort(atoms.begin(), atoms.end());

  const double B = static_cast<double>(atoms.size());
  std::vector<double> xs, vs;
  xs.reserve(atoms.size() + 1);
  vs.reserve(atoms.size() + 1);
  std::size_t i = 0;
  while (i < atoms.size()) {
    std::size_t j = i;
    while (j < atoms.size() && atoms[j] == atoms[i]) ++j;
    xs.push_back(atoms[i]);
    vs.push_back(static_cast<double>(j) / B);  // ECDF value at the atom (closed convention)
    i = j;
  }

  double gap;
  if (xs.size() > 1) {
    gap = (xs.back() - xs.front()) / static_cast<double>(xs.size());
  } else {
    gap = std::max(1e-9, 1e-9 * std::abs(xs.front()));
  }
  xs.insert(xs.begin(), xs.front() - gap);
  vs.insert(vs.begin(), 0.0);

  CdMeta meta;
  meta.family = mode == BootstrapMode::reflected ? "bootstrap_reflected" : "bootstrap_raw";
  meta.point_estimate = theta_hat;
  numkernel::GridCdf grid(std::move(xs), std::move(vs));
  meta.scale = std::max(grid.quantile(0.75) - grid.quantile(0.25), 1e-12);
  return ConfDist::from_grid(std::move(grid), Exactness::asymptotic, std::move(meta));
}

}  // namespace cdcomb
