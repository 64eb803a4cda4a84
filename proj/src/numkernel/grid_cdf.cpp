#include "cdcomb/numkernel/grid_cdf.hpp"

#include <algorithm>
#include <cmath>

#include "cdcomb/error.hpp"

namespace cdcomb::numkernel {

GridCdf::GridCdf(std::vector<double> xs, std::vector<double> values)
    : xs_(std::move(xs)), vs_(std::move(values)) {
  if (xs_.size() != vs_.size()) throw InputError("GridCdf: grid/value size mismatch");
  if (xs_.size() < 2) throw InputError("GridCdf: need at least two grid points");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i] > xs_[i - 1])) throw InputError("GridCdf: grid must be strictly increasing");
  double run = 0.0;
  for (auto& v : vs_) {
    if (!std::isfinite(v)) throw InputError("GridCdf: non-finite value");
    v = std::clamp(v, 0.0, 1.0);
    run = std::max(run, v);
    v = run;
  }
}

double GridCdf::cdf(double x) const {
  if (x <= xs_.front()) return vs_.front();
  if (x >= xs_.back()) return vs_.back();
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
  return vs_[i - 1] + w * (vs_[i] - vs_[i - 1]);
}

double GridCdf::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("GridCdf::quantile: p must be in (0,1)");
  if (p <= vs_.front()) return xs_.front();
  if (p >= vs_.back()) return xs_.back();
  // first index with value >= p
  auto it = std::lower_bound(vs_.begin(), vs_.end(), p);
  std::size_t i = static_cast<std::size_t>(it - vs_.begin());
  if (i == 0) return xs_.front();
  double dv = vs_[i] - vs_[i - 1];
  if (dv <= 0.0) return xs_[i];
  double w = (p - vs_[i - 1]) / dv;
  return xs_[i - 1] + w * (xs_[i] - xs_[i - 1]);
}

double GridCdf::density(double x) const {
  if (x < xs_.front() || x > xs_.back()) return 0.0;
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i == 0) i = 1;
  if (i >= xs_.size()) i = xs_.size() - 1;
  return (vs_[i] - vs_[i - 1]) / (xs_[i] - xs_[i - 1]);
}

}  // namespace cdcomb::numkernel
