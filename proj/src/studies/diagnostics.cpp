#include "cdcomb/studies/diagnostics.hpp"

#include <vector>

#include "cdcomb/error.hpp"

namespace cdcomb::studies {

stats::KsResult uniformity_diagnostic(const std::function<ConfDist(int rep)>& cd_factory,
                                      double theta0, int reps) {
  if (reps < 100) throw InputError("uniformity_diagnostic: reps must be >= 100");
  std::vector<double> pits(reps);
  for (int r = 0; r < reps; ++r) pits[r] = cd_factory(r).cdf(theta0);
  return stats::ks_uniform(pits);
}

}  // namespace cdcomb::studies
