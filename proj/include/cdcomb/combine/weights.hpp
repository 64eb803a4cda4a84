#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cdcomb/cd/conf_dist.hpp"

namespace cdcomb {

enum class KernelKind { normal, triangle, rectangular };

/// Combination weights omega = (1, w_2, ..., w_L) with provenance.
struct WeightVector {
  enum class Provenance { fixed, indicator, kernel };

  std::vector<double> omegas;
  Provenance provenance = Provenance::fixed;
  double alpha_n = 0.0;      // indicator weights
  KernelKind kernel = KernelKind::normal;
  double bandwidth = 0.0;    // kernel weights

  static WeightVector fixed(std::vector<double> omegas);
  static WeightVector all_ones(std::size_t count);

  std::size_t size() const { return omegas.size(); }
  bool zero_one_only() const;
  void validate() const;  // omega_1 == 1, all omegas in [0,1]
};

/// Indicator weights of Theorem 3.3: w_j = 1 iff the closed level-(1-alpha_n)
/// central intervals I_1 and I_j overlap (touching endpoints count).
WeightVector weights_indicator(std::span<const ConfDist> cds, double alpha_n);

/// Kernel weights of Eq.-style w_j = K((m_1 - m_j)/b)/K(0), with m_i the CD
/// medians and default bandwidth b = sqrt(IQR of H_1). Kernels are
/// standardized to unit second moment: normal phi(t), triangle on |t|<sqrt(6),
/// rectangular (1/(2 sqrt(3))) on |t|<sqrt(3).
WeightVector weights_kernel(std::span<const ConfDist> cds, KernelKind kernel,
                            std::optional<double> bandwidth = std::nullopt);

}  // namespace cdcomb
