#include "cdcomb/numkernel/family.hpp"

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "cdcomb/error.hpp"
#include "cdcomb/numkernel/de_l.hpp"
#include "cdcomb/numkernel/special.hpp"

namespace cdcomb::numkernel {

namespace {
boost::math::students_t_distribution<double> t_dist(int df) {
  return boost::math::students_t_distribution<double>(df);
}
boost::math::chi_squared_distribution<double> chi2_dist(int df) {
  return boost::math::chi_squared_distribution<double>(df);
}
void require_prob(double p, const char* who) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError(std::string(who) + ": p must be in (0,1)");
}
}  // namespace

DistFamily DistFamily::t(int df) {
  if (df < 1) throw ParameterError("student_t: df must be a positive integer");
  return {Kind::student_t, df};
}

DistFamily DistFamily::chi_squared(int df) {
  if (df < 1) throw ParameterError("chi_squared: df must be a positive integer");
  return {Kind::chi_squared, df};
}

DistFamily DistFamily::de_convolved(int levels) {
  if (levels < 1) throw ParameterError("de_convolved: L must be a positive integer");
  return {Kind::de_convolved, levels};
}

std::string DistFamily::label() const {
  switch (kind) {
    case Kind::std_normal: return "std_normal";
    case Kind::student_t: return "student_t(" + std::to_string(param) + ")";
    case Kind::chi_squared: return "chi_squared(" + std::to_string(param) + ")";
    case Kind::exp_standard: return "exp_standard";
    case Kind::exp_mirror: return "exp_mirror";
    case Kind::double_exp: return "double_exp";
    case Kind::de_convolved: return "de_convolved(" + std::to_string(param) + ")";
  }
  return "?";
}

double cdf(const DistFamily& f, double t) {
  switch (f.kind) {
    case DistFamily::Kind::std_normal: return norm_cdf(t);
    case DistFamily::Kind::student_t: return boost::math::cdf(t_dist(f.param), t);
    case DistFamily::Kind::chi_squared:
      return t <= 0.0 ? 0.0 : boost::math::cdf(chi2_dist(f.param), t);
    case DistFamily::Kind::exp_standard: return t <= 0.0 ? 0.0 : -std::expm1(-t);
    case DistFamily::Kind::exp_mirror: return t >= 0.0 ? 1.0 : std::exp(t);
    case DistFamily::Kind::double_exp:
      return t <= 0.0 ? 0.5 * std::exp(t) : 1.0 - 0.5 * std::exp(-t);
    case DistFamily::Kind::de_convolved: return de_l_cdf(f.param, t);
  }
  throw ParameterError("cdf: unknown family");
}

double quantile(const DistFamily& f, double p) {
  require_prob(p, "quantile");
  switch (f.kind) {
    case DistFamily::Kind::std_normal: return norm_quantile(p);
    case DistFamily::Kind::student_t: return boost::math::quantile(t_dist(f.param), p);
    case DistFamily::Kind::chi_squared: return boost::math::quantile(chi2_dist(f.param), p);
    case DistFamily::Kind::exp_standard: return -std::log1p(-p);
    case DistFamily::Kind::exp_mirror: return std::log(p);
    case DistFamily::Kind::double_exp:
      return p <= 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
    case DistFamily::Kind::de_convolved: return de_l_quantile(f.param, p);
  }
  throw ParameterError("quantile: unknown family");
}

double density(const DistFamily& f, double t) {
  switch (f.kind) {
    case DistFamily::Kind::std_normal: return norm_density(t);
    case DistFamily::Kind::student_t: return boost::math::pdf(t_dist(f.param), t);
    case DistFamily::Kind::chi_squared:
      return t <= 0.0 ? 0.0 : boost::math::pdf(chi2_dist(f.param), t);
    case DistFamily::Kind::exp_standard: return t < 0.0 ? 0.0 : std::exp(-t);
    case DistFamily::Kind::exp_mirror: return t > 0.0 ? 0.0 : std::exp(t);
    case DistFamily::Kind::double_exp: return 0.5 * std::exp(-std::abs(t));
    case DistFamily::Kind::de_convolved: return de_l_density(de_tail_poly(f.param), t);
  }
  throw ParameterError("density: unknown family");
}

double log_cdf(const DistFamily& f, double t) {
  switch (f.kind) {
    case DistFamily::Kind::std_normal: return log_norm_cdf(t);
    case DistFamily::Kind::exp_mirror: return t >= 0.0 ? 0.0 : t;
    case DistFamily::Kind::exp_standard: {
      if (t <= 0.0) return kLogClamp;
      double p = -std::expm1(-t);
      return p > 0.0 ? std::log(p) : kLogClamp;
    }
    case DistFamily::Kind::double_exp:
      if (t <= 0.0) return std::log(0.5) + t;
      return std::log1p(-0.5 * std::exp(-t));
    case DistFamily::Kind::de_convolved: {
      TailPoly v = de_tail_poly(f.param);
      if (t <= 0.0) return de_l_log_tail(v, -t);
      return std::log1p(-std::exp(de_l_log_tail(v, t)));
    }
    default: {
      // boost computes the lower tail directly; no cancellation here
      double p = cdf(f, t);
      return p > 0.0 ? std::log(p) : kLogClamp;
    }
  }
}

double log_sf(const DistFamily& f, double t) {
  switch (f.kind) {
    case DistFamily::Kind::std_normal: return log_norm_sf(t);
    case DistFamily::Kind::exp_standard: return t <= 0.0 ? 0.0 : -t;
    case DistFamily::Kind::exp_mirror: {
      if (t >= 0.0) return kLogClamp;
      double s = -std::expm1(t);
      return s > 0.0 ? std::log(s) : kLogClamp;
    }
    case DistFamily::Kind::double_exp:
      if (t >= 0.0) return std::log(0.5) - t;
      return std::log1p(-0.5 * std::exp(t));
    case DistFamily::Kind::de_convolved: {
      TailPoly v = de_tail_poly(f.param);
      if (t >= 0.0) return de_l_log_tail(v, t);
      return std::log1p(-std::exp(de_l_log_tail(v, -t)));
    }
    case DistFamily::Kind::student_t: {
      // complemented cdf avoids the 1 - cdf cancellation in the upper tail
      double s = boost::math::cdf(boost::math::complement(t_dist(f.param), t));
      return s > 0.0 ? std::log(s) : kLogClamp;
    }
    case DistFamily::Kind::chi_squared: {
      if (t <= 0.0) return 0.0;
      double s = boost::math::cdf(boost::math::complement(chi2_dist(f.param), t));
      return s > 0.0 ? std::log(s) : kLogClamp;
    }
  }
  throw ParameterError("log_sf: unknown family");
}

Interval support(const DistFamily& f) {
  switch (f.kind) {
    case DistFamily::Kind::chi_squared:
    case DistFamily::Kind::exp_standard: return Interval::positive_half_line();
    case DistFamily::Kind::exp_mirror:
      return {-std::numeric_limits<double>::infinity(), 0.0};
    default: return Interval::whole_line();
  }
}

double quantile_from_logs(const DistFamily& f, double lu, double lsu) {
  constexpr double kLogHalf = -0.6931471805599453;
  switch (f.kind) {
    case DistFamily::Kind::double_exp:
      return lu <= kLogHalf ? std::log(2.0) + lu : -(std::log(2.0) + lsu);
    case DistFamily::Kind::exp_mirror: return lu;
    case DistFamily::Kind::exp_standard: return -lsu;
    case DistFamily::Kind::std_normal:
      if (lu <= kLogHalf) return norm_quantile_from_log(lu);
      return -norm_quantile_from_log(lsu);
    default: return quantile(f, std::exp(lu));
  }
}

}  // namespace cdcomb::numkernel
