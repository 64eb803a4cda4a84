#include "cdcomb/combine/weights.hpp"

#include <cmath>

#include "cdcomb/error.hpp"

namespace cdcomb {

WeightVector WeightVector::fixed(std::vector<double> omegas) {
  WeightVector w;
  w.omegas = std::move(omegas);
  w.provenance = Provenance::fixed;
  w.validate();
  return w;
}

WeightVector WeightVector::all_ones(std::size_t count) {
  return fixed(std::vector<double>(count, 1.0));
}

bool WeightVector::zero_one_only() const {
  for (double w : omegas)
    if (w != 0.0 && w != 1.0) return false;
  return true;
}

void WeightVector::validate() const {
  if (omegas.empty()) throw InputError("WeightVector: empty");
  if (omegas.front() != 1.0) throw InputError("WeightVector: omega_1 must equal 1");
  for (double w : omegas)
    if (!(w >= 0.0 && w <= 1.0))
      throw ParameterError("WeightVector: weights must lie in [0,1]");
}

WeightVector weights_indicator(std::span<const ConfDist> cds, double alpha_n) {
  if (cds.empty()) throw InputError("weights_indicator: no input CDs");
  if (!(alpha_n > 0.0 && alpha_n < 1.0))
    throw ParameterError("weights_indicator: alpha_n must be in (0,1)");

  auto central = [&](const ConfDist& cd) -> Interval {
    return {cd.quantile(alpha_n / 2.0), cd.quantile(1.0 - alpha_n / 2.0)};
  };
  Interval first = central(cds[0]);

  WeightVector w;
  w.provenance = WeightVector::Provenance::indicator;
  w.alpha_n = alpha_n;
  w.omegas.reserve(cds.size());
  w.omegas.push_back(1.0);
  for (std::size_t j = 1; j < cds.size(); ++j)
    w.omegas.push_back(first.overlaps(central(cds[j])) ? 1.0 : 0.0);
  return w;
}

namespace {
// kernels standardized to mean 0, variance 1; only the ratio K(t)/K(0) matters
double kernel_ratio(KernelKind kind, double t) {
  switch (kind) {
    case KernelKind::normal: return std::exp(-0.5 * t * t);
    case KernelKind::triangle: {
      const double half_width = std::sqrt(6.0);
      return std::max(0.0, 1.0 - std::abs(t) / half_width);
    }
    case KernelKind::rectangular: return std::abs(t) < std::sqrt(3.0) ? 1.0 : 0.0;
  }
  throw ParameterError("weights_kernel: unknown kernel");
}
}  // namespace

WeightVector weights_kernel(std::span<const ConfDist> cds, KernelKind kernel,
                            std::optional<double> bandwidth) {
  if (cds.empty()) throw InputError("weights_kernel: no input CDs");
  double b = bandwidth ? *bandwidth : std::sqrt(cds[0].iqr());
  if (!(b > 0.0)) throw ParameterError("weights_kernel: bandwidth must be > 0");

  double m1 = cds[0].median();
  WeightVector w;
  w.provenance = WeightVector::Provenance::kernel;
  w.kernel = kernel;
  w.bandwidth = b;
  w.omegas.reserve(cds.size());
  w.omegas.push_back(1.0);
  for (std::size_t j = 1; j < cds.size(); ++j)
    w.omegas.push_back(kernel_ratio(kernel, (m1 - cds[j].median()) / b));
  return w;
}

}  // namespace cdcomb
