#include <CLI11.hpp>

#include "cdcomb/cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"confidence-distribution construction and combination"};
  app.require_subcommand(1);

  cdcomb::cli::RunConfig cfg;

  auto add_grid_opts = [&](CLI::App* cmd) {
    cmd->add_option("--grid-lo", cfg.grid_lo, "density grid lower bound");
    cmd->add_option("--grid-hi", cfg.grid_hi, "density grid upper bound");
    cmd->add_option("--grid-points", cfg.grid_points, "density grid points (>= 16)");
  };

  auto* combine = app.add_subcommand("combine", "combine study summaries into one CD");
  combine->add_option("--input", cfg.input_path, "studies CSV (study_id,theta_hat,se[,n])")
      ->required();
  combine->add_option("--method", cfg.method, "nm|e1|e2|de|an|prod|prod-scale");
  combine->add_option("--adaptive", cfg.adaptive, "none|indicator|kernel");
  combine->add_option("--alpha-n", cfg.alpha_n, "indicator-weight interval level");
  combine->add_option("--kernel", cfg.kernel, "normal|triangle|rectangular");
  combine->add_option("--bandwidth", cfg.bandwidth, "kernel bandwidth override");
  combine->add_option("--alpha", cfg.alpha, "two-sided interval level for the quantile table");
  combine->add_option("--out", cfg.out_prefix, "output file prefix")->required();
  add_grid_opts(combine);

  auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo studies");
  simulate->add_option("--what", cfg.what, "common-mean|pit|adaptive");
  simulate->add_option("--n1", cfg.n1, "first sample size");
  simulate->add_option("--n2", cfg.n2, "second sample size");
  simulate->add_option("--sigma1", cfg.sigma1, "first true SD");
  simulate->add_option("--sigma2", cfg.sigma2, "second true SD");
  simulate->add_option("--mu", cfg.mu, "true mean");
  simulate->add_option("--reps", cfg.reps, "replications");
  simulate->add_option("--level", cfg.level, "confidence level");
  simulate->add_option("--method", cfg.method, "combiner for pit/adaptive: nm|e1|e2|de|prod");
  simulate->add_option("--adaptive", cfg.adaptive, "none|indicator|kernel (what=adaptive)");
  simulate->add_option("--alpha-n", cfg.alpha_n, "indicator-weight interval level");
  simulate->add_option("--kernel", cfg.kernel, "normal|triangle|rectangular");
  simulate->add_option("--n", cfg.adaptive_n, "per-study size (what=adaptive)");
  simulate->add_option("--sigma", cfg.adaptive_sigma, "per-study SD (what=adaptive)");
  simulate->add_option("--shift-se", cfg.shift_se, "wrong-study shift in SEs (what=adaptive)");
  simulate->add_option("--seed", cfg.seed, "RNG seed")->required();
  simulate->add_option("--out", cfg.out_prefix, "output file prefix")->required();

  auto* odds = app.add_subcommand("odds", "2x2 tables -> log-odds study summaries");
  odds->add_option("--tables", cfg.input_path, "tables CSV (study_id,a,b,c,d)")->required();
  odds->add_option("--zero-cell", cfg.zero_cell, "half|reject");
  odds->add_option("--out", cfg.out_prefix, "output file prefix")->required();

  auto* oja = app.add_subcommand("oja", "split-and-combine Oja-scale bootstrap");
  auto* points = oja->add_option("--points", cfg.input_path, "points CSV (x,y)");
  oja->add_option("--cloud-n", cfg.cloud_n, "simulate a Cauchy-mixture cloud of this size")
      ->excludes(points);
  oja->add_option("--cloud-seed", cfg.cloud_seed, "cloud seed");
  oja->add_option("--k", cfg.pieces, "number of pieces");
  oja->add_option("--B", cfg.boot_reps, "bootstrap resamples per piece");
  oja->add_option("--method", cfg.method, "combiner: de|prod");
  oja->add_option("--alpha", cfg.alpha, "two-sided interval level for the quantile table");
  oja->add_option("--seed", cfg.seed, "RNG seed")->required();
  oja->add_option("--out", cfg.out_prefix, "output file prefix")->required();
  add_grid_opts(oja);

  auto* slope = app.add_subcommand("slope", "empirical tail-decay (Bahadur slope) study");
  slope->add_option("--sigmas", cfg.sigmas, "per-study SDs (one normal CD each)");
  slope->add_option("--epsilon", cfg.epsilon, "tail offset");
  slope->add_option("--n-schedule", cfg.n_schedule, "increasing per-study sizes");
  slope->add_option("--reps", cfg.reps, "replications per n");
  slope->add_option("--method", cfg.method, "combiner: nm|e1|e2|de");
  slope->add_option("--seed", cfg.seed, "RNG seed")->required();
  slope->add_option("--out", cfg.out_prefix, "output file prefix")->required();

  auto* depoly = app.add_subcommand("depoly", "print the DE_L tail polynomial");
  depoly->add_option("--L", cfg.levels, "convolution order")->required();
  depoly->add_option("--out", cfg.out_prefix, "optional output file prefix");

  CLI11_PARSE(app, argc, argv);

  if (combine->parsed()) cfg.command = cdcomb::cli::Command::combine;
  if (simulate->parsed()) cfg.command = cdcomb::cli::Command::simulate;
  if (odds->parsed()) cfg.command = cdcomb::cli::Command::odds;
  if (oja->parsed()) cfg.command = cdcomb::cli::Command::oja;
  if (slope->parsed()) cfg.command = cdcomb::cli::Command::slope;
  if (depoly->parsed()) cfg.command = cdcomb::cli::Command::depoly;

  return cdcomb::cli::run(cfg);
}
