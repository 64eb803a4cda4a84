#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cdcomb::cli {

enum class Command { combine, simulate, odds, oja, slope, depoly };

struct RunConfig {
  Command command = Command::combine;

  // inputs
  std::string input_path;   // studies / tables / points CSV
  std::string out_prefix;   // output file prefix

  // method selection
  std::string method = "de";        // nm|e1|e2|de|an|prod|prod-scale
  std::string adaptive = "none";    // none|indicator|kernel
  double alpha_n = 0.25;
  std::string kernel = "normal";    // normal|triangle|rectangular
  std::optional<double> bandwidth;

  // grid spec
  std::optional<double> grid_lo;
  std::optional<double> grid_hi;
  int grid_points = 801;

  double alpha = 0.05;
  std::uint64_t seed = 1;

  // simulate
  std::string what = "common-mean";  // common-mean|pit|adaptive
  int n1 = 3, n2 = 4;
  double sigma1 = 1.0, sigma2 = 1.5;
  double mu = 0.0;
  int reps = 1000;
  double level = 0.95;
  // simulate adaptive
  int adaptive_n = 500;
  double adaptive_sigma = 4.0;
  double shift_se = 10.0;

  // odds
  std::string zero_cell = "half";  // half|reject

  // oja
  int pieces = 1;
  int boot_reps = 5000;
  std::optional<int> cloud_n;      // generate the demo cloud instead of reading CSV
  std::uint64_t cloud_seed = 4;

  // slope
  std::vector<double> sigmas = {1.0, 2.0};
  double epsilon = 1.0;
  std::vector<int> n_schedule = {250, 500, 1000, 2000};

  // depoly
  int levels = 3;
};

/// Validates the config, dispatches, writes the report files, and returns the
/// process exit status (0 success, 1 runtime failure, 2 bad configuration).
/// Outputs are byte-identical for identical configs and seeds.
int run(const RunConfig& config);

}  // namespace cdcomb::cli
