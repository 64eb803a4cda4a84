#include <doctest.h>

#include <cmath>
#include <vector>

#include "cdcomb/error.hpp"
#include "cdcomb/numkernel/convolution.hpp"
#include "cdcomb/numkernel/de_l.hpp"
#include "cdcomb/numkernel/family.hpp"
#include "cdcomb/numkernel/special.hpp"
#include "cdcomb/numkernel/tail_poly.hpp"
#include "cdcomb/rng.hpp"
#include "oracles.hpp"

using namespace cdcomb;
using namespace cdcomb::numkernel;

namespace {
const std::vector<DistFamily> kAllFamilies = {
    DistFamily::normal(),       DistFamily::t(3),           DistFamily::t(25),
    DistFamily::chi_squared(4), DistFamily::chi_squared(1), DistFamily::exp_standard(),
    DistFamily::exp_mirror(),   DistFamily::double_exp(),   DistFamily::de_convolved(3)};
}

TEST_CASE("family cdf worked values") {
  CHECK(cdf(DistFamily::normal(), 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cdf(DistFamily::double_exp(), 0.0) == doctest::Approx(0.5).epsilon(1e-14));

  // chi^2_4 has the closed-form survival e^{-x/2}(1 + x/2)
  double x = 2.7726;
  double survival = std::exp(-x / 2.0) * (1.0 + x / 2.0);
  CHECK(cdf(DistFamily::chi_squared(4), x) == doctest::Approx(1.0 - survival).epsilon(1e-11));
  CHECK(cdf(DistFamily::chi_squared(4), x) == doctest::Approx(0.4034).epsilon(2e-4));

  CHECK_THROWS_AS(DistFamily::chi_squared(0), ParameterError);
  CHECK_THROWS_AS(DistFamily::t(-1), ParameterError);
  CHECK_THROWS_AS(DistFamily::de_convolved(0), ParameterError);
}

TEST_CASE("family quantile worked values and domain errors") {
  CHECK(quantile(DistFamily::normal(), 0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(quantile(DistFamily::double_exp(), 0.75) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-13));
  CHECK(quantile(DistFamily::de_convolved(2), 0.5) ==
        doctest::Approx(0.0).epsilon(1e-10).scale(1.0));

  for (double bad : {0.0, 1.0, -0.2, 1.7})
    CHECK_THROWS_AS(quantile(DistFamily::normal(), bad), ParameterError);
}

TEST_CASE("cdf nondecreasing and quantile roundtrips") {
  Rng rng(2024);
  for (const auto& fam : kAllFamilies) {
    for (int i = 0; i < 100; ++i) {
      double a = quantile(fam, 0.02 + 0.96 * rng.uniform());
      double b = quantile(fam, 0.02 + 0.96 * rng.uniform());
      if (a > b) std::swap(a, b);
      CHECK(cdf(fam, a) <= cdf(fam, b) + 1e-14);
    }
    double tol = fam.kind == DistFamily::Kind::de_convolved ? 1e-8 : 1e-10;
    for (double p : {0.001, 0.05, 0.3, 0.5, 0.77, 0.95, 0.999}) {
      CAPTURE(fam.label());
      CAPTURE(p);
      CHECK(cdf(fam, quantile(fam, p)) == doctest::Approx(p).epsilon(tol).scale(1.0));
    }
  }
}

TEST_CASE("tail polynomial recursion: frozen low orders") {
  auto v1 = de_tail_poly(1);
  REQUIRE(v1.exact);
  REQUIRE(v1.exact_coeffs.size() == 1);
  CHECK(v1.exact_coeffs[0] == Rational(1));

  auto v2 = de_tail_poly(2);
  REQUIRE(v2.exact_coeffs.size() == 2);
  CHECK(v2.exact_coeffs[0] == Rational(1));
  CHECK(v2.exact_coeffs[1] == Rational(1, 2));

  // hand run of the recursion (also checked against the convolution oracle
  // in the acceptance suite)
  auto v3 = de_tail_poly(3);
  REQUIRE(v3.exact_coeffs.size() == 3);
  CHECK(v3.exact_coeffs[0] == Rational(1));
  CHECK(v3.exact_coeffs[1] == Rational(5, 8));
  CHECK(v3.exact_coeffs[2] == Rational(1, 8));

  CHECK_THROWS_AS(de_tail_poly(0), ParameterError);
}

TEST_CASE("tail polynomial structure for L = 1..10") {
  for (int levels = 1; levels <= 10; ++levels) {
    auto v = de_tail_poly(levels);
    CHECK(v.degree() == levels - 1);
    CHECK(v.coeffs[0] == 1.0);
    CHECK(v.exact);

    // (1/2) V_L(t) e^{-t} must be a decreasing tail with values in (0, 1/2]
    double prev = 0.5;
    for (double t = 0.0; t <= 40.0; t += 0.25) {
      double tail = 0.5 * v.eval(t) * std::exp(-t);
      CHECK(tail > 0.0);
      CHECK(tail <= prev + 1e-15);
      prev = tail;
    }
  }
}

TEST_CASE("tail polynomial switches to floating point above exact_max") {
  auto v = de_tail_poly(25, 20);
  CHECK_FALSE(v.exact);
  CHECK(v.degree() == 24);
  CHECK(v.coeffs[0] == doctest::Approx(1.0).epsilon(1e-12));
  // the double continuation must agree with the fully exact run
  auto exact = de_tail_poly(25, 100);
  REQUIRE(exact.exact);
  for (int j = 0; j <= 24; ++j)
    CHECK(v.coeffs[j] == doctest::Approx(exact.coeffs[j]).epsilon(1e-10));
}

TEST_CASE("de_l_cdf worked values and symmetry") {
  CHECK(de_l_cdf(1, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  // L = 2 at t = 2: 1 - (1/2)(1 + 1) e^{-2}
  CHECK(de_l_cdf(2, 2.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-13));
  CHECK(de_l_cdf(2, 2.0) == doctest::Approx(0.8647).epsilon(1e-4));

  for (int levels : {1, 2, 3, 4, 5, 6}) {
    auto v = de_tail_poly(levels);
    for (double t = -12.0; t <= 12.0; t += 0.37)
      CHECK(de_l_cdf(v, t) + de_l_cdf(v, -t) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("de_l_cdf matches direct grid convolution for L = 2..6") {
  for (int levels = 2; levels <= 6; ++levels) {
    auto oracle = oracles::laplace_convolution_cdf(levels);
    auto v = de_tail_poly(levels);
    double sup = 0.0;
    for (double t = -15.0; t <= 15.0; t += 0.05)
      sup = std::max(sup, std::abs(oracle.at(t) - de_l_cdf(v, t)));
    CAPTURE(levels);
    CHECK(sup <= 1e-4);
  }
}

TEST_CASE("de_l_quantile worked values and roundtrips") {
  CHECK(de_l_quantile(5, 0.5) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  CHECK(de_l_quantile(1, 0.25) == doctest::Approx(-std::log(2.0)).epsilon(1e-10));
  CHECK(de_l_quantile(2, de_l_cdf(2, 1.3)) == doctest::Approx(1.3).epsilon(1e-8));

  for (int levels : {1, 2, 3, 6}) {
    auto v = de_tail_poly(levels);
    for (double p : {1e-6, 0.01, 0.25, 0.5, 0.77, 0.999, 1.0 - 1e-9}) {
      double t = de_l_quantile(v, p);
      CHECK(de_l_cdf(v, t) == doctest::Approx(p).epsilon(1e-8).scale(1.0));
    }
  }
  CHECK_THROWS_AS(de_l_quantile(2, 0.0), ParameterError);
  CHECK_THROWS_AS(de_l_quantile(2, 1.0), ParameterError);
}

TEST_CASE("weighted convolution: closed normal form") {
  std::vector<double> w{1.0, 1.0};
  auto g = weighted_convolution_cdf(DistFamily::normal(), w);
  // sum of two standard normals at 1: Phi(1/sqrt(2)) = 0.760249938...
  CHECK(g.cdf(1.0) == doctest::Approx(0.7602499389).epsilon(1e-8));

  std::vector<double> w2{1.0, 0.5};
  auto g2 = weighted_convolution_cdf(DistFamily::normal(), w2);
  double sd = std::sqrt(1.25);
  for (double t : {-2.0, -0.3, 0.0, 1.1, 2.7})
    CHECK(g2.cdf(t) == doctest::Approx(norm_cdf(t / sd)).epsilon(1e-9));
}

TEST_CASE("weighted convolution: grid path consistency with DE_L") {
  for (int levels = 2; levels <= 6; ++levels) {
    std::vector<double> w(levels, 1.0);
    auto g = weighted_convolution_cdf(DistFamily::double_exp(), w);
    auto v = de_tail_poly(levels);
    double sup = 0.0;
    for (double t = -20.0; t <= 20.0; t += 0.01)
      sup = std::max(sup, std::abs(g.cdf(t) - de_l_cdf(v, t)));
    CAPTURE(levels);
    CHECK(sup <= 1e-4);
  }
}

TEST_CASE("weighted convolution: zero weights drop terms exactly") {
  std::vector<double> w{1.0, 0.0, 0.0};
  auto g = weighted_convolution_cdf(DistFamily::double_exp(), w);
  double sup = 0.0;
  for (double t = -15.0; t <= 15.0; t += 0.01)
    sup = std::max(sup, std::abs(g.cdf(t) - cdf(DistFamily::double_exp(), t)));
  CHECK(sup <= 1e-6);
}

TEST_CASE("weighted convolution input validation") {
  std::vector<double> bad1{1.0, -0.1};
  std::vector<double> bad2{1.0, 1.3};
  std::vector<double> bad3{0.7, 0.5};
  CHECK_THROWS_AS(weighted_convolution_cdf(DistFamily::double_exp(), bad1), ParameterError);
  CHECK_THROWS_AS(weighted_convolution_cdf(DistFamily::double_exp(), bad2), ParameterError);
  CHECK_THROWS_AS(weighted_convolution_cdf(DistFamily::double_exp(), bad3), InputError);
}

TEST_CASE("log-space normal helpers") {
  for (double z : {-5.0, -12.0, -25.0, -31.0, -45.0, -120.0}) {
    double lp = log_norm_cdf(z);
    CHECK(norm_quantile_from_log(lp) == doctest::Approx(z).epsilon(1e-9));
  }
  for (double z : {-3.0, -8.0, -20.0})
    CHECK(log_norm_cdf(z) == doctest::Approx(std::log(norm_cdf(z))).epsilon(1e-10));
}

TEST_CASE("even-df chi-squared log tails") {
  for (int levels : {1, 2, 3, 5}) {
    DistFamily chi = DistFamily::chi_squared(2 * levels);
    for (double x : {0.5, 2.0, 7.0, 20.0}) {
      CHECK(log_chi2_even_sf(levels, x) == doctest::Approx(log_sf(chi, x)).epsilon(1e-10));
      CHECK(log_chi2_even_cdf_from_log(levels, std::log(x)) ==
            doctest::Approx(std::log(cdf(chi, x))).epsilon(1e-9));
    }
  }
  // deep lower tail: P(chi2_4 <= x) ~ (x/2)^2/2 as x -> 0
  double lx = std::log(1e-12);
  double expect = 2.0 * (lx - std::log(2.0)) - std::log(2.0);
  CHECK(log_chi2_even_cdf_from_log(2, lx) == doctest::Approx(expect).epsilon(1e-9));
}
