#pragma once

#include <string>

#include "cdcomb/cd/conf_dist.hpp"

namespace cdcomb::io {

struct GridSpec {
  double lo;
  double hi;
  int npoints;
};

/// Writes `theta\tcdf\tdensity` rows (LF endings, 12 significant digits);
/// the density column is the central finite difference of the cdf column.
void emit_density_grid(const ConfDist& cd, const GridSpec& spec, const std::string& path);

}  // namespace cdcomb::io
