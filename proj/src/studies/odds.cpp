#include "cdcomb/studies/odds.hpp"

#include <cmath>

#include "cdcomb/error.hpp"

namespace cdcomb::studies {

StudySummary odds_ratio_summary(const Contingency2x2& table, ZeroCellPolicy policy,
                                std::string study_id) {
  double cells[4] = {table.a, table.b, table.c, table.d};
  for (double& c : cells) {
    if (!(c >= 0.0)) throw InputError("odds_ratio_summary: counts must be nonnegative");
    if (c == 0.0) {
      if (policy == ZeroCellPolicy::reject)
        throw InputError("odds_ratio_summary: zero cell (policy: reject)");
      c = 0.5;
    }
  }
  StudySummary s;
  s.study_id = std::move(study_id);
  s.theta_hat = std::log((cells[0] / cells[1]) / (cells[2] / cells[3]));
  s.se = std::sqrt(1.0 / cells[0] + 1.0 / cells[1] + 1.0 / cells[2] + 1.0 / cells[3]);
  return s;
}

}  // namespace cdcomb::studies
