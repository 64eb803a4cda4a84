#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cdcomb/cd/conf_dist.hpp"
#include "cdcomb/combine/weights.hpp"
#include "cdcomb/numkernel/family.hpp"

namespace cdcomb {

enum class CombineMethod { NM, E1, E2, DE, AN, PROD, PROD_SCALE };

/// Per-study input for the asymptotically-normal combiner: statistic T,
/// scale V (variance-type, so that sqrt(n/V)(T - theta) is standard normal in
/// the limit) and sample size n. A (theta_hat, se) summary corresponds to
/// n/V = 1/se^2.
struct AnStudy {
  double t;
  double v;
  double n = 1.0;
  double precision() const { return n / v; }
};

/// General monotone-function combination with kernel F0:
///   H_c(y) = G_c(sum_j F0^{-1}(H_j(y))),
/// G_c the L-fold convolution of F0 (closed forms for the normal, exp and
/// double-exponential kernels; grid convolution otherwise). Output is exact
/// iff every input is exact.
ConfDist combine_monotone(std::span<const ConfDist> cds, const numkernel::DistFamily& f0);

/// F0 = DE; Bahadur-optimal on both sides for exact inputs.
ConfDist combine_de(std::span<const ConfDist> cds);

/// Weighted combination H_{c,w}(y) = G_{c,w}(sum_j w_j F0^{-1}(H_j(y))).
/// Zero-weight studies are dropped exactly; output stays exact only when all
/// weights are 0/1 and the kept inputs are exact.
ConfDist combine_weighted(std::span<const ConfDist> cds, const WeightVector& weights,
                          const numkernel::DistFamily& f0);

/// H_AN(theta) = Phi([sum n_i/V_i]^{1/2} (theta - theta_c)) with theta_c the
/// precision-weighted mean of the T_i.
ConfDist combine_an(std::span<const AnStudy> studies);
/// Weighted variant: g = sum_j w_j sqrt(prec_j) Phi^{-1}(u_j), giving a
/// normal CD centered at the w*prec-weighted mean.
ConfDist combine_an(std::span<const AnStudy> studies, const WeightVector& weights);

enum class ProductVariant { location, scale };

/// Density-product combination: H_P(theta) = int_{-inf}^theta prod h_i / int prod h_i.
/// The scale variant multiplies an extra y^{L-1} into the product (i.e. uses
/// h**(y)/y with h** = prod{y h_i(y)}). Exact when every input is exact and
/// of the matching shape class, asymptotic otherwise.
ConfDist combine_product(std::span<const ConfDist> cds, ProductVariant variant);

struct CombinerSpec {
  CombineMethod method = CombineMethod::DE;
  numkernel::DistFamily f0 = numkernel::DistFamily::double_exp();  // NM/E1/E2/DE
  std::optional<WeightVector> weights;
  std::vector<AnStudy> an_studies;  // AN only
};

/// Dispatch helper used by the CLI and the studies module.
ConfDist combine(const CombinerSpec& spec, std::span<const ConfDist> cds);

struct UniformityReport {
  double ks_stat;
  double p_value;
  int reps;
};

/// PIT uniformity check: builds a combined CD per replication via
/// `make_cd(rep)`, evaluates it at theta0 and KS-tests the sample against
/// U(0,1). Replications must be seed-deterministic inside make_cd.
UniformityReport validate_combined(const std::function<ConfDist(int)>& make_cd, double theta0,
                                   int reps);

}  // namespace cdcomb
