#include "cdcomb/cli/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <span>

#include "cdcomb/cd/constructors.hpp"
#include "cdcomb/cd/inference.hpp"
#include "cdcomb/combine/combine.hpp"
#include "cdcomb/error.hpp"
#include "cdcomb/io/csv.hpp"
#include "cdcomb/io/grid_io.hpp"
#include "cdcomb/numkernel/tail_poly.hpp"
#include "cdcomb/rng.hpp"
#include "cdcomb/slope/slope.hpp"
#include "cdcomb/studies/common_mean.hpp"
#include "cdcomb/studies/diagnostics.hpp"
#include "cdcomb/studies/oja.hpp"

namespace cdcomb::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void write_quantile_table(const ConfDist& cd, double alpha, const std::string& path) {
  auto out = open_out(path);
  out << "quantile\ttheta\n";
  out << fmt(alpha / 2.0) << '\t' << fmt(cd.quantile(alpha / 2.0)) << '\n';
  out << "0.5\t" << fmt(cd.median()) << '\n';
  out << fmt(1.0 - alpha / 2.0) << '\t' << fmt(cd.quantile(1.0 - alpha / 2.0)) << '\n';
}

void write_grid(const ConfDist& cd, const RunConfig& cfg, const std::string& path) {
  io::GridSpec spec;
  if (cfg.grid_lo && cfg.grid_hi) {
    spec.lo = *cfg.grid_lo;
    spec.hi = *cfg.grid_hi;
  } else {
    double lo = cd.quantile(5e-4), hi = cd.quantile(1.0 - 5e-4);
    double pad = 0.05 * (hi - lo);
    spec.lo = lo - pad;
    spec.hi = hi + pad;
  }
  spec.npoints = cfg.grid_points;
  io::emit_density_grid(cd, spec, path);
}

numkernel::DistFamily f0_for(const std::string& method) {
  if (method == "nm") return numkernel::DistFamily::normal();
  if (method == "e1") return numkernel::DistFamily::exp_standard();
  if (method == "e2") return numkernel::DistFamily::exp_mirror();
  if (method == "de") return numkernel::DistFamily::double_exp();
  throw InputError("unknown monotone-combiner method '" + method + "'");
}

KernelKind kernel_for(const std::string& name) {
  if (name == "normal") return KernelKind::normal;
  if (name == "triangle") return KernelKind::triangle;
  if (name == "rectangular") return KernelKind::rectangular;
  throw InputError("unknown kernel '" + name + "'");
}

std::optional<WeightVector> adaptive_weights(const RunConfig& cfg,
                                             std::span<const ConfDist> cds) {
  if (cfg.adaptive == "none") return std::nullopt;
  if (cfg.adaptive == "indicator") return weights_indicator(cds, cfg.alpha_n);
  if (cfg.adaptive == "kernel")
    return weights_kernel(cds, kernel_for(cfg.kernel), cfg.bandwidth);
  throw InputError("unknown adaptive mode '" + cfg.adaptive + "'");
}

int cmd_combine(const RunConfig& cfg) {
  auto summaries = io::parse_study_csv(cfg.input_path);
  std::vector<ConfDist> cds;
  cds.reserve(summaries.size());
  for (const auto& s : summaries) cds.push_back(cd_from_point_se(s.theta_hat, s.se));

  std::optional<WeightVector> weights = adaptive_weights(cfg, cds);

  ConfDist combined;
  if (cfg.method == "an") {
    std::vector<AnStudy> an;
    an.reserve(summaries.size());
    for (const auto& s : summaries) an.push_back({s.theta_hat, s.se * s.se, 1.0});
    combined = weights ? combine_an(an, *weights) : combine_an(an);
  } else if (cfg.method == "prod" || cfg.method == "prod-scale") {
    if (weights) throw InputError("adaptive weights are not supported for the product method");
    combined = combine_product(cds, cfg.method == "prod" ? ProductVariant::location
                                                         : ProductVariant::scale);
  } else {
    numkernel::DistFamily f0 = f0_for(cfg.method);
    combined = weights ? combine_weighted(cds, *weights, f0) : combine_monotone(cds, f0);
  }

  write_quantile_table(combined, cfg.alpha, cfg.out_prefix + ".quantiles.tsv");
  if (weights) {
    auto out = open_out(cfg.out_prefix + ".weights.tsv");
    out << "study_id\tomega\n";
    for (std::size_t j = 0; j < summaries.size(); ++j)
      out << summaries[j].study_id << '\t' << fmt(weights->omegas[j]) << '\n';
  }
  write_grid(combined, cfg, cfg.out_prefix + ".grid.tsv");
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  if (cfg.what == "common-mean") {
    studies::CommonMeanConfig c;
    c.n1 = cfg.n1;
    c.n2 = cfg.n2;
    c.sigma1 = cfg.sigma1;
    c.sigma2 = cfg.sigma2;
    c.mu = cfg.mu;
    c.reps = cfg.reps;
    c.level = cfg.level;
    c.seed = cfg.seed;
    auto report = studies::simulate_common_mean(c);
    auto out = open_out(cfg.out_prefix + ".report.tsv");
    out << "key\tvalue\n";
    out << "coverage_de\t" << fmt(report.coverage_de) << '\n';
    out << "coverage_de_se\t" << fmt(report.coverage_de_se) << '\n';
    out << "coverage_an\t" << fmt(report.coverage_an) << '\n';
    out << "coverage_an_se\t" << fmt(report.coverage_an_se) << '\n';
    out << "mean_length_de\t" << fmt(report.mean_length_de) << '\n';
    out << "mean_length_an\t" << fmt(report.mean_length_an) << '\n';
    out << "mean_length_ratio\t" << fmt(report.mean_length_ratio) << '\n';
    out << "mean_length_ratio_se\t" << fmt(report.mean_length_ratio_se) << '\n';
    out << "median_mu_gd\t" << fmt(report.median_mu_gd) << '\n';
    return 0;
  }

  if (cfg.what == "pit") {
    auto factory = [&](int rep) {
      Rng rng = Rng::substream(cfg.seed, /*stream=*/1, static_cast<std::uint64_t>(rep));
      auto draw = [&](double sigma, int n) {
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < n; ++i) {
          double x = rng.normal(cfg.mu, sigma);
          sum += x;
          sum2 += x * x;
        }
        double mean = sum / n;
        double sd = std::sqrt(std::max((sum2 - n * mean * mean) / (n - 1), 1e-300));
        return cd_normal_mean(mean, sd, n);
      };
      std::vector<ConfDist> cds{draw(cfg.sigma1, cfg.n1), draw(cfg.sigma2, cfg.n2)};
      if (cfg.method == "prod") return combine_product(cds, ProductVariant::location);
      return combine_monotone(cds, f0_for(cfg.method));
    };
    auto ks = studies::uniformity_diagnostic(factory, cfg.mu, cfg.reps);
    auto out = open_out(cfg.out_prefix + ".report.tsv");
    out << "key\tvalue\n";
    out << "ks_stat\t" << fmt(ks.statistic) << '\n';
    out << "p_value\t" << fmt(ks.p_value) << '\n';
    out << "reps\t" << cfg.reps << '\n';
    return 0;
  }

  if (cfg.what == "adaptive") {
    const double se = cfg.adaptive_sigma / std::sqrt(static_cast<double>(cfg.adaptive_n));
    auto factory = [&](int rep) {
      Rng rng = Rng::substream(cfg.seed, /*stream=*/2, static_cast<std::uint64_t>(rep));
      std::vector<ConfDist> cds;
      cds.push_back(cd_from_point_se(rng.normal(cfg.mu, se), se));
      cds.push_back(cd_from_point_se(rng.normal(cfg.mu, se), se));
      cds.push_back(cd_from_point_se(rng.normal(cfg.mu + cfg.shift_se * se, se), se));
      auto weights = adaptive_weights(cfg, cds);
      if (!weights) return combine_monotone(cds, f0_for(cfg.method));
      return combine_weighted(cds, *weights, f0_for(cfg.method));
    };
    auto ks = studies::uniformity_diagnostic(factory, cfg.mu, cfg.reps);
    auto out = open_out(cfg.out_prefix + ".report.tsv");
    out << "key\tvalue\n";
    out << "ks_stat\t" << fmt(ks.statistic) << '\n';
    out << "p_value\t" << fmt(ks.p_value) << '\n';
    out << "reps\t" << cfg.reps << '\n';
    return 0;
  }

  throw InputError("unknown simulate target '" + cfg.what + "'");
}

int cmd_odds(const RunConfig& cfg) {
  auto rows = io::parse_tables_csv(cfg.input_path);
  studies::ZeroCellPolicy policy;
  if (cfg.zero_cell == "half")
    policy = studies::ZeroCellPolicy::half_correction;
  else if (cfg.zero_cell == "reject")
    policy = studies::ZeroCellPolicy::reject;
  else
    throw InputError("unknown zero-cell policy '" + cfg.zero_cell + "'");

  auto out = open_out(cfg.out_prefix + ".studies.csv");
  out << "study_id,theta_hat,se\n";
  for (const auto& row : rows) {
    auto s = studies::odds_ratio_summary(row.table, policy, row.study_id);
    out << s.study_id << ',' << fmt(s.theta_hat) << ',' << fmt(s.se) << '\n';
  }
  return 0;
}

int cmd_oja(const RunConfig& cfg) {
  studies::PointCloud2D cloud;
  if (cfg.cloud_n)
    cloud = studies::make_cauchy_cloud(*cfg.cloud_n, cfg.cloud_seed);
  else
    cloud = io::parse_points_csv(cfg.input_path);

  studies::SplitCombineConfig sc;
  sc.pieces = cfg.pieces;
  sc.boot_reps = cfg.boot_reps;
  sc.seed = cfg.seed;
  if (cfg.method == "prod")
    sc.combiner.method = CombineMethod::PROD;
  else if (cfg.method == "de")
    sc.combiner.method = CombineMethod::DE;
  else
    throw InputError("oja: method must be 'de' or 'prod'");

  auto report = studies::split_combine_bootstrap(cloud, sc);
  auto out = open_out(cfg.out_prefix + ".report.tsv");
  out << "key\tvalue\n";
  out << "n\t" << cloud.size() << '\n';
  out << "k\t" << cfg.pieces << '\n';
  out << "B\t" << cfg.boot_reps << '\n';
  out << "oja_scale\t" << fmt(studies::oja_scale(cloud)) << '\n';
  out << "triangles_per_full_statistic\t" << report.triangles_per_full_statistic << '\n';
  out << "bootstrap_area_evals\t" << report.bootstrap_area_evals << '\n';
  out << "median\t" << fmt(report.cd.median()) << '\n';
  out << "iqr\t" << fmt(report.cd.iqr()) << '\n';
  write_quantile_table(report.cd, cfg.alpha, cfg.out_prefix + ".quantiles.tsv");
  write_grid(report.cd, cfg, cfg.out_prefix + ".grid.tsv");
  return 0;
}

int cmd_slope(const RunConfig& cfg) {
  if (cfg.sigmas.empty()) throw InputError("slope: need at least one sigma");
  const int L = static_cast<int>(cfg.sigmas.size());

  auto component_factory = [&](double sigma, std::uint64_t stream) {
    return [&cfg, sigma, stream](int n, std::uint64_t rep) {
      Rng rng = Rng::substream(cfg.seed, stream, rep);
      double se = sigma / std::sqrt(static_cast<double>(n));
      return cd_from_point_se(rng.normal(0.0, se), se);
    };
  };

  std::vector<SlopePair> comp;
  for (int j = 0; j < L; ++j)
    comp.push_back(slope_estimate(component_factory(cfg.sigmas[j], 10 + j), 0.0, cfg.epsilon,
                                  cfg.n_schedule, cfg.reps));

  // combined CD built from per-study size n = m/L; rates normalized by m
  std::vector<int> total_schedule;
  for (int n : cfg.n_schedule) total_schedule.push_back(n * L);
  auto combined_factory = [&](int m, std::uint64_t rep) {
    int n = m / L;
    std::vector<ConfDist> cds;
    for (int j = 0; j < L; ++j) {
      Rng rng = Rng::substream(cfg.seed, 10 + static_cast<std::uint64_t>(j), rep);
      double se = cfg.sigmas[j] / std::sqrt(static_cast<double>(n));
      cds.push_back(cd_from_point_se(rng.normal(0.0, se), se));
    }
    return combine_monotone(cds, f0_for(cfg.method));
  };
  SlopePair combined = slope_estimate(combined_factory, 0.0, cfg.epsilon, total_schedule,
                                      cfg.reps);

  std::vector<ComponentSlope> comps;
  for (int j = 0; j < L; ++j)
    comps.push_back({comp[j].left.extrapolated, comp[j].right.extrapolated, 1.0});
  auto report = slope_bound_report(comps, combined);

  auto out = open_out(cfg.out_prefix + ".slope.tsv");
  out << "key\tvalue\n";
  for (int j = 0; j < L; ++j) {
    out << "component" << j + 1 << "_slope_left\t" << fmt(comp[j].left.extrapolated) << '\n';
    out << "component" << j + 1 << "_slope_right\t" << fmt(comp[j].right.extrapolated) << '\n';
    out << "component" << j + 1 << "_analytic\t"
        << fmt(cfg.epsilon * cfg.epsilon / (2.0 * cfg.sigmas[j] * cfg.sigmas[j])) << '\n';
  }
  out << "bound_left\t" << fmt(report.bound_left) << '\n';
  out << "bound_right\t" << fmt(report.bound_right) << '\n';
  out << "combined_left\t" << fmt(report.combined_left) << '\n';
  out << "combined_left_se\t" << fmt(report.combined_left_se) << '\n';
  out << "combined_right\t" << fmt(report.combined_right) << '\n';
  out << "combined_right_se\t" << fmt(report.combined_right_se) << '\n';
  out << "attains_left\t" << (report.attains_left ? 1 : 0) << '\n';
  out << "attains_right\t" << (report.attains_right ? 1 : 0) << '\n';
  out << "exceeds_left\t" << (report.exceeds_left ? 1 : 0) << '\n';
  out << "exceeds_right\t" << (report.exceeds_right ? 1 : 0) << '\n';
  return 0;
}

int cmd_depoly(const RunConfig& cfg) {
  auto poly = numkernel::de_tail_poly(cfg.levels);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!cfg.out_prefix.empty()) {
    file = open_out(cfg.out_prefix + ".depoly.tsv");
    os = &file;
  }
  *os << "degree\tcoefficient\texact\n";
  for (std::size_t j = 0; j < poly.coeffs.size(); ++j) {
    *os << j << '\t';
    if (poly.exact)
      *os << poly.exact_coeffs[j].str();
    else
      *os << fmt(poly.coeffs[j]);
    *os << '\t' << (poly.exact ? 1 : 0) << '\n';
  }
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    switch (config.command) {
      case Command::combine: return cmd_combine(config);
      case Command::simulate: return cmd_simulate(config);
      case Command::odds: return cmd_odds(config);
      case Command::oja: return cmd_oja(config);
      case Command::slope: return cmd_slope(config);
      case Command::depoly: return cmd_depoly(config);
    }
    std::cerr << "cdcomb: unknown command\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "cdcomb: parse error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "cdcomb: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "cdcomb: invalid parameter: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "cdcomb: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "cdcomb: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cdcomb::cli
