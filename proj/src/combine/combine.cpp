#include "cdcomb/combine/combine.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "cdcomb/error.hpp"
#include "cdcomb/numkernel/convolution.hpp"
#include "cdcomb/numkernel/de_l.hpp"
#include "cdcomb/numkernel/special.hpp"
#include "cdcomb/stats/ks.hpp"

namespace cdcomb {

using numkernel::DistFamily;
using numkernel::GridCdf;
using numkernel::kLogClamp;
using numkernel::TailPoly;

namespace {

constexpr double kLogTailTol = -34.538776394910684;  // log(1e-15)
constexpr double kLogHalf = -0.6931471805599453;

// log(-log(x)) given lx = log(x) and lcx = log(1-x); stable as x -> 1.
double log_neg_log(double lx, double lcx) {
  if (lx < -1e-8) return std::log(-lx);
  return lcx;  // -log x ~= 1 - x
}

// State shared by the combined-CD closures.
struct MonotoneState {
  std::vector<ConfDist> parts;
  std::vector<double> omegas;  // same length as parts, all > 0
  DistFamily f0;

  enum class GKind { normal, chi2_lower, chi2_upper, de_poly, grid };
  GKind g_kind;
  double normal_sd = 1.0;           // GKind::normal
  TailPoly tail;                    // GKind::de_poly
  std::shared_ptr<GridCdf> grid;    // GKind::grid

  int levels() const { return static_cast<int>(parts.size()); }

  // sum_j w_j F0^{-1}(u_j) with u_j clamped into [tail_tol, 1-tail_tol]
  double combine_arg(double y) const {
    double s = 0.0;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      double lu = std::max(parts[j].log_cdf(y), kLogTailTol);
      double lsu = std::max(parts[j].log_sf(y), kLogTailTol);
      s += omegas[j] * numkernel::quantile_from_logs(f0, lu, lsu);
    }
    return s;
  }

  double g_cdf(double s) const {
    switch (g_kind) {
      case GKind::normal: return numkernel::norm_cdf(s / normal_sd);
      case GKind::chi2_lower:  // G(s) = P(chi2_{2L} <= 2s), s >= 0
        return s <= 0.0 ? 0.0 : -std::expm1(numkernel::log_chi2_even_sf(levels(), 2.0 * s));
      case GKind::chi2_upper:  // G(s) = P(chi2_{2L} >= -2s), s <= 0
        return s >= 0.0 ? 1.0 : std::exp(numkernel::log_chi2_even_sf(levels(), -2.0 * s));
      case GKind::de_poly: return numkernel::de_l_cdf(tail, s);
      case GKind::grid: return grid->cdf(s);
    }
    return 0.0;
  }

  double cdf(double y) const { return g_cdf(combine_arg(y)); }

  // Exact log-tail evaluation; component tails enter through their own
  // log_cdf/log_sf so the composition never underflows.
  double log_cdf(double y) const {
    switch (g_kind) {
      case GKind::normal: {
        double s = 0.0;
        for (std::size_t j = 0; j < parts.size(); ++j) {
          double lu = parts[j].log_cdf(y);
          double z = lu <= kLogHalf ? numkernel::norm_quantile_from_log(lu)
                                    : -numkernel::norm_quantile_from_log(parts[j].log_sf(y));
          s += omegas[j] * z;
        }
        return numkernel::log_norm_cdf(s / normal_sd);
      }
      case GKind::chi2_lower: {
        // arg y_c = 2 sum t_j, t_j = -log(1 - u_j) = -log_sf_j
        std::vector<double> log_t(parts.size());
        for (std::size_t j = 0; j < parts.size(); ++j) {
          double lsu = parts[j].log_sf(y);
          log_t[j] = log_neg_log(lsu, parts[j].log_cdf(y));
        }
        double log_arg = std::log(2.0) + numkernel::logsumexp(log_t);
        return numkernel::log_chi2_even_cdf_from_log(levels(), log_arg);
      }
      case GKind::chi2_upper: {
        double s = 0.0;  // sum log u_j <= 0
        for (std::size_t j = 0; j < parts.size(); ++j) s += parts[j].log_cdf(y);
        return numkernel::log_chi2_even_sf(levels(), -2.0 * s);
      }
      case GKind::de_poly: {
        double s = combine_arg_log(y);
        if (s <= 0.0) return numkernel::de_l_log_tail(tail, -s);
        return std::log1p(-std::exp(numkernel::de_l_log_tail(tail, s)));
      }
      case GKind::grid: {
        double p = cdf(y);
        return p > 0.0 ? std::log(p) : kLogClamp;
      }
    }
    return kLogClamp;
  }

  double log_sf(double y) const {
    switch (g_kind) {
      case GKind::normal: {
        double s = 0.0;
        for (std::size_t j = 0; j < parts.size(); ++j) {
          double lu = parts[j].log_cdf(y);
          double z = lu <= kLogHalf ? numkernel::norm_quantile_from_log(lu)
                                    : -numkernel::norm_quantile_from_log(parts[j].log_sf(y));
          s += omegas[j] * z;
        }
        return numkernel::log_norm_cdf(-s / normal_sd);
      }
      case GKind::chi2_lower: {
        double s = 0.0;  // t_j = -log_sf_j >= 0
        for (std::size_t j = 0; j < parts.size(); ++j) s -= parts[j].log_sf(y);
        return numkernel::log_chi2_even_sf(levels(), 2.0 * s);
      }
      case GKind::chi2_upper: {
        // 1 - H = P(chi2_{2L} < -2 sum log u_j), arg -> 0 as all u_j -> 1
        std::vector<double> log_t(parts.size());
        for (std::size_t j = 0; j < parts.size(); ++j) {
          double lu = parts[j].log_cdf(y);
          log_t[j] = log_neg_log(lu, parts[j].log_sf(y));
        }
        double log_arg = std::log(2.0) + numkernel::logsumexp(log_t);
        return numkernel::log_chi2_even_cdf_from_log(levels(), log_arg);
      }
      case GKind::de_poly: {
        double s = combine_arg_log(y);
        if (s >= 0.0) return numkernel::de_l_log_tail(tail, s);
        return std::log1p(-std::exp(numkernel::de_l_log_tail(tail, -s)));
      }
      case GKind::grid: {
        double p = 1.0 - cdf(y);
        return p > 0.0 ? std::log(p) : kLogClamp;
      }
    }
    return kLogClamp;
  }

  // like combine_arg but without the tail clamp (exact component logs)
  double combine_arg_log(double y) const {
    double s = 0.0;
    for (std::size_t j = 0; j < parts.size(); ++j)
      s += omegas[j] *
           numkernel::quantile_from_logs(f0, parts[j].log_cdf(y), parts[j].log_sf(y));
    return s;
  }
};

ConfDist build_combined(std::vector<ConfDist> kept, std::vector<double> omegas,
                        const DistFamily& f0, bool exact, const char* label) {
  auto st = std::make_shared<MonotoneState>();
  st->parts = std::move(kept);
  st->omegas = std::move(omegas);
  st->f0 = f0;

  bool all_ones = std::all_of(st->omegas.begin(), st->omegas.end(),
                              [](double w) { return w == 1.0; });
  const int levels = st->levels();

  if (f0.kind == DistFamily::Kind::std_normal) {
    double var = 0.0;
    for (double w : st->omegas) var += w * w;
    st->g_kind = MonotoneState::GKind::normal;
    st->normal_sd = std::sqrt(var);
  } else if (all_ones && f0.kind == DistFamily::Kind::exp_standard) {
    st->g_kind = MonotoneState::GKind::chi2_lower;
  } else if (all_ones && f0.kind == DistFamily::Kind::exp_mirror) {
    st->g_kind = MonotoneState::GKind::chi2_upper;
  } else if (all_ones && f0.kind == DistFamily::Kind::double_exp) {
    st->g_kind = MonotoneState::GKind::de_poly;
    st->tail = numkernel::de_tail_poly(levels);
  } else {
    st->g_kind = MonotoneState::GKind::grid;
    st->grid = std::make_shared<GridCdf>(numkernel::weighted_convolution_cdf(f0, st->omegas));
  }

  Interval sup = st->parts[0].support();
  double center = 0.0, scale = 0.0;
  for (const auto& cd : st->parts) {
    Interval s = cd.support();
    sup.lo = std::max(sup.lo, s.lo);
    sup.hi = std::min(sup.hi, s.hi);
    center += cd.median();
    scale = std::max(scale, cd.iqr());
  }
  if (!(sup.lo < sup.hi)) throw InputError("combine: input CDs have non-overlapping supports");
  center /= levels;

  ConfDist::Callables fns;
  fns.cdf = [st](double y) { return st->cdf(y); };
  fns.log_cdf = [st](double y) { return st->log_cdf(y); };
  fns.log_sf = [st](double y) { return st->log_sf(y); };

  CdMeta meta;
  meta.family = std::string(label) + "(" + f0.label() + ",L=" + std::to_string(levels) + ")";
  meta.point_estimate = center;
  meta.scale = std::max(scale, 1e-12);
  return ConfDist::from_callables(std::move(fns), sup,
                                  exact ? Exactness::exact : Exactness::asymptotic,
                                  std::move(meta));
}

}  // namespace

ConfDist combine_monotone(std::span<const ConfDist> cds, const DistFamily& f0) {
  if (cds.empty()) throw InputError("combine_monotone: no input CDs");
  if (cds.size() == 1) return cds[0];
  bool exact = std::all_of(cds.begin(), cds.end(),
                           [](const ConfDist& c) { return c.exactness() == Exactness::exact; });
  return build_combined(std::vector<ConfDist>(cds.begin(), cds.end()),
                        std::vector<double>(cds.size(), 1.0), f0, exact, "combined");
}

ConfDist combine_de(std::span<const ConfDist> cds) {
  return combine_monotone(cds, DistFamily::double_exp());
}

ConfDist combine_weighted(std::span<const ConfDist> cds, const WeightVector& weights,
                          const DistFamily& f0) {
  if (cds.empty()) throw InputError("combine_weighted: no input CDs");
  weights.validate();
  if (weights.size() != cds.size())
    throw InputError("combine_weighted: weight/CD length mismatch");

  std::vector<ConfDist> kept;
  std::vector<double> omegas;
  for (std::size_t j = 0; j < cds.size(); ++j) {
    if (weights.omegas[j] > 0.0) {
      kept.push_back(cds[j]);
      omegas.push_back(weights.omegas[j]);
    }
  }
  if (kept.size() == 1) return kept[0];

  bool exact = weights.zero_one_only() &&
               std::all_of(kept.begin(), kept.end(), [](const ConfDist& c) {
                 return c.exactness() == Exactness::exact;
               });
  return build_combined(std::move(kept), std::move(omegas), f0, exact, "combined_weighted");
}

ConfDist combine_an(std::span<const AnStudy> studies) {
  if (studies.empty()) throw InputError("combine_an: no studies");
  double total = 0.0, weighted = 0.0;
  for (const auto& s : studies) {
    if (!(s.v > 0.0)) throw ParameterError("combine_an: V_i must be > 0");
    if (!(s.n > 0.0)) throw ParameterError("combine_an: n_i must be > 0");
    total += s.precision();
    weighted += s.precision() * s.t;
  }
  double theta_c = weighted / total;
  double se = 1.0 / std::sqrt(total);
  CdMeta meta;
  meta.family = "H_AN(L=" + std::to_string(studies.size()) + ")";
  meta.point_estimate = theta_c;
  meta.scale = se;
  return ConfDist::location_scale(DistFamily::normal(), theta_c, se, Exactness::asymptotic,
                                  std::move(meta));
}

ConfDist combine_an(std::span<const AnStudy> studies, const WeightVector& weights) {
  if (studies.empty()) throw InputError("combine_an: no studies");
  weights.validate();
  if (weights.size() != studies.size())
    throw InputError("combine_an: weight/study length mismatch");
  // g = sum_j w_j sqrt(prec_j) Phi^{-1}(u_j):
  //   H(theta) = Phi(sum_j w_j prec_j (theta - T_j) / sqrt(sum_j w_j^2 prec_j))
  double a = 0.0, b = 0.0, c = 0.0;  // sum w*prec, sum w*prec*T, sum w^2*prec
  for (std::size_t j = 0; j < studies.size(); ++j) {
    const auto& s = studies[j];
    if (!(s.v > 0.0)) throw ParameterError("combine_an: V_i must be > 0");
    double w = weights.omegas[j];
    a += w * s.precision();
    b += w * s.precision() * s.t;
    c += w * w * s.precision();
  }
  if (!(a > 0.0)) throw InputError("combine_an: all weights vanished");
  double theta_c = b / a;
  double se = std::sqrt(c) / a;
  CdMeta meta;
  meta.family = "H_AN_weighted(L=" + std::to_string(studies.size()) + ")";
  meta.point_estimate = theta_c;
  meta.scale = se;
  return ConfDist::location_scale(DistFamily::normal(), theta_c, se, Exactness::asymptotic,
                                  std::move(meta));
}

ConfDist combine(const CombinerSpec& spec, std::span<const ConfDist> cds) {
  switch (spec.method) {
    case CombineMethod::NM:
    case CombineMethod::E1:
    case CombineMethod::E2:
    case CombineMethod::DE: {
      DistFamily f0 = spec.f0;
      if (spec.method == CombineMethod::NM) f0 = DistFamily::normal();
      if (spec.method == CombineMethod::E1) f0 = DistFamily::exp_standard();
      if (spec.method == CombineMethod::E2) f0 = DistFamily::exp_mirror();
      if (spec.method == CombineMethod::DE) f0 = DistFamily::double_exp();
      if (spec.weights) return combine_weighted(cds, *spec.weights, f0);
      return combine_monotone(cds, f0);
    }
    case CombineMethod::AN: {
      if (spec.an_studies.empty())
        throw InputError("combine: AN method requires summary studies");
      if (spec.weights) return combine_an(spec.an_studies, *spec.weights);
      return combine_an(spec.an_studies);
    }
    case CombineMethod::PROD: return combine_product(cds, ProductVariant::location);
    case CombineMethod::PROD_SCALE: return combine_product(cds, ProductVariant::scale);
  }
  throw InputError("combine: unknown method");
}

UniformityReport validate_combined(const std::function<ConfDist(int)>& make_cd, double theta0,
                                   int reps) {
  if (reps < 100) throw InputError("validate_combined: reps must be >= 100");
  std::vector<double> pits(reps);
  for (int r = 0; r < reps; ++r) pits[r] = make_cd(r).cdf(theta0);
  auto ks = stats::ks_uniform(pits);
  return {ks.statistic, ks.p_value, reps};
}

}  // namespace cdcomb
