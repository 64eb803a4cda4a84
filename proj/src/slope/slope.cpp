#include "cdcomb/slope/slope.hpp"

#include <algorithm>
#include <cmath>

#include "cdcomb/error.hpp"
#include "cdcomb/numkernel/special.hpp"

namespace cdcomb {

namespace {

// Least squares fit of y ~ a + b/n; returns intercept and the variance of the
// intercept under independent per-point variances.
struct Fit {
  double a;
  double var_a;
};

Fit fit_intercept(const std::vector<int>& ns, const std::vector<double>& ys,
                  const std::vector<double>& var_y) {
  const std::size_t k = ns.size();
  if (k == 1) return {ys[0], var_y[0]};
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    double x = 1.0 / ns[i];
    sx += x;
    sxx += x * x;
    sy += ys[i];
    sxy += x * ys[i];
  }
  double n = static_cast<double>(k);
  double det = n * sxx - sx * sx;
  double b = (n * sxy - sx * sy) / det;
  double a = 0.0, var_a = 0.0, cc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double x = 1.0 / ns[i];
    double c = (sxx - sx * x) / det;  // coefficient of y_i in a-hat
    a += c * ys[i];
    var_a += c * c * var_y[i];
    cc += c * c;
  }
  // fold lack-of-fit of the 1/n model into the reported error
  if (k > 2) {
    double ss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double r = ys[i] - (a + b / ns[i]);
      ss += r * r;
    }
    var_a += cc * ss / (n - 2.0);
  }
  return {a, var_a};
}

}  // namespace

SlopePair slope_estimate(const std::function<ConfDist(int n, std::uint64_t rep)>& factory,
                         double theta0, double epsilon, std::vector<int> n_schedule, int reps) {
  if (!(epsilon >= 0.0)) throw ParameterError("slope_estimate: epsilon must be >= 0");
  if (n_schedule.empty()) throw InputError("slope_estimate: empty n schedule");
  if (!std::is_sorted(n_schedule.begin(), n_schedule.end()))
    throw InputError("slope_estimate: n schedule must be increasing");
  if (reps < 1) throw InputError("slope_estimate: reps must be >= 1");

  SlopePair out;
  for (TailSide side : {TailSide::left, TailSide::right}) {
    SlopeEstimate est;
    est.epsilon = epsilon;
    est.side = side;
    est.n_schedule = n_schedule;
    est.values.reserve(n_schedule.size());
    est.std_errors.reserve(n_schedule.size());
    std::vector<double> variances;

    for (int n : n_schedule) {
      double sum = 0.0, sum2 = 0.0;
      for (int r = 0; r < reps; ++r) {
        // decorrelate the two sides' streams
        std::uint64_t rep_key =
            static_cast<std::uint64_t>(r) * 2u + (side == TailSide::right ? 1u : 0u);
        ConfDist cd = factory(n, rep_key);
        double lt = side == TailSide::left ? cd.log_cdf(theta0 - epsilon)
                                           : cd.log_sf(theta0 + epsilon);
        // log-space evaluators return genuine values below -745; only the
        // underflow sentinel (a double tail that evaluated to exact 0) is
        // pinned at the clamp and flagged
        if (lt == numkernel::kLogClamp) est.clamped = true;
        double v = -lt / static_cast<double>(n);
        sum += v;
        sum2 += v * v;
      }
      double mean = sum / reps;
      double var = reps > 1 ? std::max(0.0, (sum2 - reps * mean * mean) / (reps - 1.0)) / reps
                            : 0.0;
      est.values.push_back(mean);
      est.std_errors.push_back(std::sqrt(var));
      variances.push_back(var);
    }

    Fit fit = fit_intercept(n_schedule, est.values, variances);
    est.extrapolated = fit.a;
    est.extrapolated_se = std::sqrt(fit.var_a);
    (side == TailSide::left ? out.left : out.right) = std::move(est);
  }
  return out;
}

SlopeBoundReport slope_bound_report(std::span<const ComponentSlope> components,
                                    const SlopePair& combined, double rel_tol) {
  if (components.empty()) throw InputError("slope_bound_report: no component slopes");
  SlopeBoundReport rep;
  double lam = 0.0;
  for (const auto& c : components) {
    rep.bound_left += c.lambda * c.s_left;
    rep.bound_right += c.lambda * c.s_right;
    lam += c.lambda;
  }
  rep.bound_left /= lam;
  rep.bound_right /= lam;

  rep.combined_left = combined.left.extrapolated;
  rep.combined_right = combined.right.extrapolated;
  rep.combined_left_se = combined.left.extrapolated_se;
  rep.combined_right_se = combined.right.extrapolated_se;

  auto exceeds = [](double est, double se, double bound) {
    return est > bound + 3.0 * se + 1e-12;
  };
  auto attains = [rel_tol](double est, double bound) {
    return std::abs(est - bound) <= rel_tol * std::max(bound, 1e-12);
  };
  rep.exceeds_left = exceeds(rep.combined_left, rep.combined_left_se, rep.bound_left);
  rep.exceeds_right = exceeds(rep.combined_right, rep.combined_right_se, rep.bound_right);
  rep.attains_left = attains(rep.combined_left, rep.bound_left);
  rep.attains_right = attains(rep.combined_right, rep.bound_right);
  return rep;
}

}  // namespace cdcomb
