#include "cdcomb/io/grid_io.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

#include "cdcomb/error.hpp"

namespace cdcomb::io {

void emit_density_grid(const ConfDist& cd, const GridSpec& spec, const std::string& path) {
  if (!(spec.lo < spec.hi)) throw InputError("emit_density_grid: need lo < hi");
  if (spec.npoints < 16) throw InputError("emit_density_grid: need npoints >= 16");

  const int n = spec.npoints;
  std::vector<double> theta(n), cdfv(n);
  for (int i = 0; i < n; ++i) {
    theta[i] = spec.lo + (spec.hi - spec.lo) * i / (n - 1);
    cdfv[i] = cd.cdf(theta[i]);
  }

  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw IoError("cannot write " + path);
  out << "theta\tcdf\tdensity\n";
  char buf[128];
  for (int i = 0; i < n; ++i) {
    int lo_i = i == 0 ? 0 : i - 1;
    int hi_i = i == n - 1 ? n - 1 : i + 1;
    double dens = (cdfv[hi_i] - cdfv[lo_i]) / (theta[hi_i] - theta[lo_i]);
    std::snprintf(buf, sizeof(buf), "%.12g\t%.12g\t%.12g\n", theta[i], cdfv[i], dens);
    out << buf;
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace cdcomb::io
