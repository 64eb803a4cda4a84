#pragma once

#include <functional>

#include "cdcomb/cd/conf_dist.hpp"
#include "cdcomb/stats/ks.hpp"

namespace cdcomb::studies {

/// PIT diagnostic: KS test of {H_r(theta0)}_{r<reps} against U(0,1), where
/// H_r is built by the seed-deterministic factory.
stats::KsResult uniformity_diagnostic(const std::function<ConfDist(int rep)>& cd_factory,
                                      double theta0, int reps);

}  // namespace cdcomb::studies
