#pragma once

#include <optional>
#include <string>

namespace cdcomb::studies {

/// Per-study summary: log-odds-ratio style point estimate with its standard
/// error; `n` is carried when known.
struct StudySummary {
  std::string study_id;
  double theta_hat = 0.0;
  double se = 1.0;
  std::optional<int> n;
};

/// 2x2 trial table: treatment successes/failures a/b, control successes/
/// failures c/d.
struct Contingency2x2 {
  double a, b, c, d;
};

enum class ZeroCellPolicy { half_correction, reject };

/// Log odds ratio theta = log((a/b)/(c/d)) with
/// se = sqrt(1/a + 1/b + 1/c + 1/d). Under half_correction, zero entries are
/// replaced by 0.5 before estimation; under reject, a zero cell is an error.
StudySummary odds_ratio_summary(const Contingency2x2& table, ZeroCellPolicy policy,
                                std::string study_id = {});

}  // namespace cdcomb::studies
