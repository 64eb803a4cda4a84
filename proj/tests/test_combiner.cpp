#include <doctest.h>

#include <cmath>
#include <vector>

#include "cdcomb/cd/constructors.hpp"
#include "cdcomb/combine/combine.hpp"
#include "cdcomb/combine/weights.hpp"
#include "cdcomb/error.hpp"
#include "cdcomb/numkernel/convolution.hpp"
#include "cdcomb/numkernel/grid_cdf.hpp"
#include "cdcomb/numkernel/special.hpp"
#include "cdcomb/rng.hpp"

using namespace cdcomb;
using numkernel::DistFamily;

namespace {

// uniform CD on [a, b]: quantiles are affine, handy for exact interval checks
ConfDist uniform_cd(double a, double b) {
  return ConfDist::from_grid(numkernel::GridCdf({a, b}, {0.0, 1.0}), Exactness::asymptotic,
                             CdMeta{});
}

std::vector<ConfDist> two_unit_normals() {
  return {cd_from_point_se(0.0, 1.0), cd_from_point_se(0.0, 1.0)};
}

ConfDist exact_normal_location(double loc, double scale) {
  CdMeta meta;
  meta.family = "normal_location";
  meta.point_estimate = loc;
  return ConfDist::location_scale(DistFamily::normal(), loc, scale, Exactness::exact, meta);
}

// scale-family CD of a uniform[0, theta] maximum: H(theta) = 1 - (y0/theta)^n
ConfDist uniform_scale_cd(double y0, int n) {
  ConfDist::Callables fns;
  fns.cdf = [y0, n](double th) {
    return th <= y0 ? 0.0 : 1.0 - std::pow(y0 / th, static_cast<double>(n));
  };
  fns.quantile = [y0, n](double p) { return y0 * std::pow(1.0 - p, -1.0 / n); };
  fns.density = [y0, n](double th) {
    return th <= y0 ? 0.0 : n * std::pow(y0, n) * std::pow(th, -(n + 1.0));
  };
  CdMeta meta;
  meta.family = "uniform_scale";
  meta.shape = ShapeClass::scale;
  meta.point_estimate = y0 * std::pow(2.0, 1.0 / n);
  return ConfDist::from_callables(std::move(fns), {y0, 1e280}, Exactness::exact, meta);
}

}  // namespace

TEST_CASE("single-input combination is the identity") {
  ConfDist cd = cd_normal_mean(0.7, 1.3, 6);
  std::vector<ConfDist> one{cd};
  for (auto f0 : {DistFamily::normal(), DistFamily::exp_mirror(), DistFamily::double_exp()}) {
    ConfDist combined = combine_monotone(one, f0);
    for (double y : {-2.0, 0.0, 0.7, 3.1})
      CHECK(combined.cdf(y) == cd.cdf(y));
  }
}

TEST_CASE("NM at the common median is 1/2") {
  auto cds = two_unit_normals();
  ConfDist nm = combine_monotone(cds, DistFamily::normal());
  CHECK(nm.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("E2 (Fisher) worked value at u1 = u2 = 1/2") {
  auto cds = two_unit_normals();
  ConfDist e2 = combine_monotone(cds, DistFamily::exp_mirror());
  // P(chi2_4 >= -4 log(1/2)) = e^{-x/2}(1 + x/2) at x = 4 log 2
  double x = 4.0 * std::log(2.0);
  double expect = std::exp(-x / 2.0) * (1.0 + x / 2.0);
  CHECK(e2.cdf(0.0) == doctest::Approx(expect).epsilon(1e-11));
  CHECK(e2.cdf(0.0) == doctest::Approx(0.5966).epsilon(1e-4));
}

TEST_CASE("E1 worked value at u1 = u2 = 1/2") {
  auto cds = two_unit_normals();
  ConfDist e1 = combine_monotone(cds, DistFamily::exp_standard());
  // P(chi2_4 <= -4 log(1 - 1/2)) = 1 - e^{-x/2}(1 + x/2) at x = 4 log 2
  double x = 4.0 * std::log(2.0);
  double expect = 1.0 - std::exp(-x / 2.0) * (1.0 + x / 2.0);
  CHECK(e1.cdf(0.0) == doctest::Approx(expect).epsilon(1e-11));
}

TEST_CASE("DE worked value at u1 = u2 = 0.9") {
  auto cds = two_unit_normals();
  ConfDist de = combine_de(cds);
  double y = numkernel::norm_quantile(0.9);
  double s = 2.0 * std::log(5.0);  // 2 DE^{-1}(0.9)
  double expect = 1.0 - 0.5 * (1.0 + s / 2.0) * std::exp(-s);
  CHECK(de.cdf(y) == doctest::Approx(expect).epsilon(1e-11));
  CHECK(de.cdf(y) == doctest::Approx(0.9478).epsilon(1e-4));
}

TEST_CASE("exactness closure") {
  std::vector<ConfDist> exact_in{cd_normal_mean(0.0, 1.0, 5), cd_normal_mean(0.2, 1.5, 8)};
  CHECK(combine_de(exact_in).exactness() == Exactness::exact);
  CHECK(combine_monotone(exact_in, DistFamily::exp_mirror()).exactness() == Exactness::exact);

  std::vector<ConfDist> mixed{cd_normal_mean(0.0, 1.0, 5), cd_from_point_se(0.2, 0.5)};
  CHECK(combine_de(mixed).exactness() == Exactness::asymptotic);
}

TEST_CASE("monotone-coordinate bound: H_c >= prod H_i and 1-H_c >= prod(1-H_i)") {
  std::vector<ConfDist> cds{cd_normal_mean(0.1, 1.0, 6), cd_from_point_se(-0.2, 0.5),
                            cd_from_point_se(0.3, 0.8)};
  std::vector<ConfDist> combos;
  for (auto f0 : {DistFamily::normal(), DistFamily::exp_standard(), DistFamily::exp_mirror(),
                  DistFamily::double_exp()})
    combos.push_back(combine_monotone(cds, f0));
  std::vector<AnStudy> an;
  for (const auto& cd : cds)
    an.push_back({*cd.meta().point_estimate, 1.0, 1.0});

  double lo = -3.0, hi = 3.0;
  for (int i = 0; i < 100; ++i) {
    double y = lo + (hi - lo) * i / 99.0;
    double prod_h = 1.0, prod_s = 1.0;
    for (const auto& cd : cds) {
      prod_h *= cd.cdf(y);
      prod_s *= 1.0 - cd.cdf(y);
    }
    for (const auto& hc : combos) {
      CHECK(hc.cdf(y) >= prod_h - 1e-12);
      CHECK(1.0 - hc.cdf(y) >= prod_s - 1e-12);
    }
  }
}

TEST_CASE("permutation symmetry of unweighted combiners") {
  std::vector<ConfDist> abc{cd_from_point_se(0.0, 1.0), cd_from_point_se(0.4, 0.7),
                            cd_normal_mean(-0.3, 1.2, 9)};
  std::vector<ConfDist> cba{abc[2], abc[1], abc[0]};
  for (auto f0 : {DistFamily::normal(), DistFamily::exp_standard(), DistFamily::exp_mirror(),
                  DistFamily::double_exp(), DistFamily::t(5)}) {
    ConfDist h1 = combine_monotone(abc, f0);
    ConfDist h2 = combine_monotone(cba, f0);
    double sup = 0.0;
    for (double y = -3.0; y <= 3.0; y += 0.1)
      sup = std::max(sup, std::abs(h1.cdf(y) - h2.cdf(y)));
    CAPTURE(f0.label());
    CHECK(sup <= 1e-10);
  }
}

TEST_CASE("weights_indicator interval overlap logic") {
  // alpha_n = 0.5 makes I the central 50% interval: for a uniform CD on
  // [a, b] that is [a + w/4, b - w/4]
  ConfDist i01 = uniform_cd(-0.5, 1.5);   // I = [0, 1]
  ConfDist i051 = uniform_cd(0.0, 2.0);   // I = [0.5, 1.5]
  ConfDist i23 = uniform_cd(1.5, 3.5);    // I = [2, 3]
  ConfDist i12 = uniform_cd(0.5, 2.5);    // I = [1, 2]

  std::vector<ConfDist> overlap{i01, i051};
  CHECK(weights_indicator(overlap, 0.5).omegas == std::vector<double>{1.0, 1.0});

  std::vector<ConfDist> disjoint{i01, i23};
  CHECK(weights_indicator(disjoint, 0.5).omegas == std::vector<double>{1.0, 0.0});

  // touching endpoints count as overlap (closed intervals)
  std::vector<ConfDist> touching{i01, i12};
  CHECK(weights_indicator(touching, 0.5).omegas == std::vector<double>{1.0, 1.0});

  CHECK_THROWS_AS(weights_indicator(overlap, 0.0), ParameterError);
  CHECK_THROWS_AS(weights_indicator(overlap, 1.0), ParameterError);
}

TEST_CASE("weights_kernel ratios") {
  double b = 0.25;
  ConfDist h1 = cd_from_point_se(0.0, 1.0);

  std::vector<ConfDist> same{h1, cd_from_point_se(0.0, 2.0)};
  for (auto kind : {KernelKind::normal, KernelKind::triangle, KernelKind::rectangular})
    CHECK(weights_kernel(same, kind, b).omegas[1] == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<ConfDist> at_b{h1, cd_from_point_se(b, 1.0)};
  CHECK(weights_kernel(at_b, KernelKind::normal, b).omegas[1] ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-10));

  std::vector<ConfDist> at_2b{h1, cd_from_point_se(2.0 * b, 1.0)};
  CHECK(weights_kernel(at_2b, KernelKind::rectangular, b).omegas[1] == 0.0);
  CHECK(weights_kernel(at_2b, KernelKind::triangle, b).omegas[1] ==
        doctest::Approx(1.0 - 2.0 / std::sqrt(6.0)).epsilon(1e-10));

  // default bandwidth is sqrt(IQR of H_1)
  auto w = weights_kernel(same, KernelKind::normal);
  double iqr = h1.quantile(0.75) - h1.quantile(0.25);
  CHECK(w.bandwidth == doctest::Approx(std::sqrt(iqr)).epsilon(1e-12));

  CHECK_THROWS_AS(weights_kernel(same, KernelKind::normal, 0.0), ParameterError);
}

TEST_CASE("combine_weighted: all-ones equals unweighted, zeros drop studies") {
  std::vector<ConfDist> cds{cd_from_point_se(0.0, 1.0), cd_from_point_se(0.5, 0.8),
                            cd_from_point_se(-0.2, 1.1)};
  ConfDist ref = combine_de(cds);
  ConfDist w1 = combine_weighted(cds, WeightVector::all_ones(3), DistFamily::double_exp());
  for (double y = -3.0; y <= 3.0; y += 0.2)
    CHECK(w1.cdf(y) == doctest::Approx(ref.cdf(y)).epsilon(1e-12).scale(1.0));

  ConfDist only1 =
      combine_weighted(cds, WeightVector::fixed({1.0, 0.0, 0.0}), DistFamily::double_exp());
  for (double y = -3.0; y <= 3.0; y += 0.2)
    CHECK(only1.cdf(y) == cds[0].cdf(y));
}

TEST_CASE("combine_weighted: closed normal form for fractional weights") {
  std::vector<ConfDist> cds{cd_from_point_se(0.0, 1.0), cd_from_point_se(0.6, 0.9)};
  double omega = 0.6;
  ConfDist h = combine_weighted(cds, WeightVector::fixed({1.0, omega}), DistFamily::normal());
  for (double y : {-1.0, 0.0, 0.3, 1.2}) {
    double g = numkernel::norm_quantile(cds[0].cdf(y)) +
               omega * numkernel::norm_quantile(cds[1].cdf(y));
    double expect = numkernel::norm_cdf(g / std::sqrt(1.0 + omega * omega));
    CHECK(h.cdf(y) == doctest::Approx(expect).epsilon(1e-12));
  }

  // and the generic grid path reproduces the closed form
  std::vector<double> w{1.0, omega};
  auto grid = numkernel::weighted_convolution_cdf(DistFamily::normal(), w);
  for (double y : {-1.0, 0.0, 0.3, 1.2}) {
    double g = numkernel::norm_quantile(cds[0].cdf(y)) +
               omega * numkernel::norm_quantile(cds[1].cdf(y));
    CHECK(grid.cdf(g) == doctest::Approx(h.cdf(y)).epsilon(1e-6));
  }
}

TEST_CASE("combine_weighted: continuity at vanishing weight") {
  std::vector<ConfDist> cds{cd_from_point_se(0.0, 1.0), cd_from_point_se(0.4, 1.0)};
  ConfDist h_eps =
      combine_weighted(cds, WeightVector::fixed({1.0, 1e-6}), DistFamily::double_exp());
  ConfDist h_zero =
      combine_weighted(cds, WeightVector::fixed({1.0, 0.0}), DistFamily::double_exp());
  double sup = 0.0;
  for (double y = -4.0; y <= 4.0; y += 0.05)
    sup = std::max(sup, std::abs(h_eps.cdf(y) - h_zero.cdf(y)));
  CHECK(sup <= 1e-3);
}

TEST_CASE("combiner input validation") {
  std::vector<ConfDist> none;
  CHECK_THROWS_AS(combine_de(none), InputError);

  std::vector<ConfDist> cds = two_unit_normals();
  CHECK_THROWS_AS(combine_weighted(cds, WeightVector::all_ones(3), DistFamily::double_exp()),
                  InputError);
  CHECK_THROWS_AS(WeightVector::fixed({0.5, 1.0}), InputError);
  CHECK_THROWS_AS(WeightVector::fixed({1.0, 1.5}), ParameterError);

  std::vector<ConfDist> disjoint{uniform_cd(0.0, 1.0), uniform_cd(2.0, 3.0)};
  CHECK_THROWS_AS(combine_de(disjoint), InputError);
  CHECK_THROWS_AS(combine_product(disjoint, ProductVariant::location), InputError);
}

TEST_CASE("combine_an worked values") {
  std::vector<AnStudy> studies{{0.0, 1.0, 1.0}, {2.0, 1.0, 1.0}};
  ConfDist an = combine_an(studies);
  CHECK(an.cdf(1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(an.median() == doctest::Approx(1.0).epsilon(1e-10));

  std::vector<AnStudy> one{{0.7, 2.0, 5.0}};
  ConfDist single = combine_an(one);
  double root_prec = std::sqrt(5.0 / 2.0);
  for (double th : {0.0, 0.7, 1.5})
    CHECK(single.cdf(th) ==
          doctest::Approx(numkernel::norm_cdf(root_prec * (th - 0.7))).epsilon(1e-12));

  std::vector<AnStudy> bad{{0.0, -1.0, 1.0}};
  CHECK_THROWS_AS(combine_an(bad), ParameterError);
}

TEST_CASE("combine_product: two normal location CDs equal the precision-weighted normal") {
  ConfDist a = exact_normal_location(0.0, 1.0);
  ConfDist b = exact_normal_location(2.0, 1.0);
  std::vector<ConfDist> cds{a, b};
  ConfDist hp = combine_product(cds, ProductVariant::location);
  CHECK(hp.exactness() == Exactness::exact);

  double sup = 0.0;
  for (double th = -2.0; th <= 4.0; th += 0.02) {
    double expect = numkernel::norm_cdf((th - 1.0) * std::sqrt(2.0));
    sup = std::max(sup, std::abs(hp.cdf(th) - expect));
  }
  CHECK(sup <= 1e-6);
  CHECK(hp.cdf(1.0) == doctest::Approx(0.5).epsilon(1e-9));

  // product/AN equivalence for normal inputs
  std::vector<AnStudy> an{{0.0, 1.0, 1.0}, {2.0, 1.0, 1.0}};
  ConfDist han = combine_an(an);
  sup = 0.0;
  for (double th = -2.0; th <= 4.0; th += 0.02)
    sup = std::max(sup, std::abs(hp.cdf(th) - han.cdf(th)));
  CHECK(sup <= 1e-6);
}

TEST_CASE("combine_product: uniform-maximum example") {
  std::vector<ConfDist> cds{uniform_scale_cd(1.0, 1), uniform_scale_cd(1.0, 1)};
  ConfDist hp = combine_product(cds, ProductVariant::location);
  // integrating the product density gives 1 - theta^{-3} on theta >= 1
  for (double th : {1.2, 1.7, 2.0, 3.0, 8.0})
    CHECK(hp.cdf(th) == doctest::Approx(1.0 - std::pow(th, -3.0)).epsilon(1e-8).scale(1.0));
  CHECK(hp.cdf(2.0) == doctest::Approx(7.0 / 8.0).epsilon(1e-8));
  // scale-family inputs through the location recipe are only asymptotic
  CHECK(hp.exactness() == Exactness::asymptotic);

  // the scale variant recovers the exact combined-sample CD 1 - theta^{-2}
  ConfDist hs = combine_product(cds, ProductVariant::scale);
  for (double th : {1.2, 1.7, 2.0, 3.0})
    CHECK(hs.cdf(th) == doctest::Approx(1.0 - std::pow(th, -2.0)).epsilon(1e-8).scale(1.0));
  CHECK(hs.exactness() == Exactness::exact);
}

TEST_CASE("combine_product: single input and zero-mass detection") {
  ConfDist a = exact_normal_location(0.3, 1.0);
  std::vector<ConfDist> one{a};
  ConfDist same = combine_product(one, ProductVariant::location);
  for (double th : {-1.0, 0.3, 2.0})
    CHECK(same.cdf(th) == a.cdf(th));

  // overlapping supports but no common effective mass
  std::vector<ConfDist> far{exact_normal_location(0.0, 1e-3),
                            exact_normal_location(100.0, 1e-3)};
  CHECK_THROWS_AS(combine_product(far, ProductVariant::location), NumericError);
}

TEST_CASE("validate_combined: exactness closure and failure modes") {
  auto exact_factory = [](int rep) {
    Rng rng = Rng::substream(101, 21, static_cast<std::uint64_t>(rep));
    std::vector<ConfDist> cds{cd_from_point_se(rng.normal(0.0, 0.3), 0.3),
                              cd_from_point_se(rng.normal(0.0, 0.5), 0.5)};
    return combine_de(cds);
  };
  auto report = validate_combined(exact_factory, 0.0, 2000);
  CHECK(report.p_value > 0.01);

  // one study centered 10 SEs off, all-ones weights: PIT collapses
  auto wrong_factory = [](int rep) {
    Rng rng = Rng::substream(102, 22, static_cast<std::uint64_t>(rep));
    std::vector<ConfDist> cds{cd_from_point_se(rng.normal(0.0, 0.3), 0.3),
                              cd_from_point_se(rng.normal(3.0, 0.3), 0.3)};
    return combine_de(cds);
  };
  CHECK(validate_combined(wrong_factory, 0.0, 2000).p_value < 0.01);

  // indicator weights drop the wrong study and recover uniformity
  auto adaptive_factory = [](int rep) {
    Rng rng = Rng::substream(102, 22, static_cast<std::uint64_t>(rep));
    std::vector<ConfDist> cds{cd_from_point_se(rng.normal(0.0, 0.3), 0.3),
                              cd_from_point_se(rng.normal(3.0, 0.3), 0.3)};
    auto w = weights_indicator(cds, 0.25);
    return combine_weighted(cds, w, DistFamily::double_exp());
  };
  CHECK(validate_combined(adaptive_factory, 0.0, 2000).p_value > 0.01);

  CHECK_THROWS_AS(validate_combined(exact_factory, 0.0, 50), InputError);
}
