#include <doctest.h>

#include <cmath>
#include <vector>

#include "cdcomb/cd/constructors.hpp"
#include "cdcomb/combine/combine.hpp"
#include "cdcomb/error.hpp"
#include "cdcomb/rng.hpp"
#include "cdcomb/slope/slope.hpp"

using namespace cdcomb;

namespace {

// factory for the z-based normal-mean CD Phi(sqrt(n)(y - theta_hat)/sigma)
auto normal_cd_factory(double sigma, std::uint64_t seed, std::uint64_t stream) {
  return [sigma, seed, stream](int n, std::uint64_t rep) {
    Rng rng = Rng::substream(seed, stream, rep);
    double se = sigma / std::sqrt(static_cast<double>(n));
    return cd_from_point_se(rng.normal(0.0, se), se);
  };
}

const std::vector<int> kSchedule{250, 500, 1000, 2000};

}  // namespace

TEST_CASE("normal CD slope: eps^2 / (2 sigma^2)") {
  auto sp1 = slope_estimate(normal_cd_factory(1.0, 9, 1), 0.0, 1.0, kSchedule, 300);
  CHECK(sp1.left.extrapolated == doctest::Approx(0.5).epsilon(0.05));
  CHECK(sp1.right.extrapolated == doctest::Approx(0.5).epsilon(0.05));
  CHECK_FALSE(sp1.left.clamped);

  auto sp2 = slope_estimate(normal_cd_factory(2.0, 9, 2), 0.0, 1.0, kSchedule, 300);
  CHECK(sp2.left.extrapolated == doctest::Approx(0.125).epsilon(0.05));
  CHECK(sp2.right.extrapolated == doctest::Approx(0.125).epsilon(0.05));
}

TEST_CASE("zero offset has zero slope") {
  auto sp = slope_estimate(normal_cd_factory(1.0, 9, 3), 0.0, 0.0, kSchedule, 300);
  CHECK(std::abs(sp.left.extrapolated) <= 0.01);
  CHECK(std::abs(sp.right.extrapolated) <= 0.01);
}

TEST_CASE("per-n values decrease toward the limit") {
  auto sp = slope_estimate(normal_cd_factory(1.0, 9, 4), 0.0, 1.0, kSchedule, 300);
  // finite-n bias is positive and shrinks along the schedule
  for (std::size_t i = 1; i < sp.left.values.size(); ++i)
    CHECK(sp.left.values[i] < sp.left.values[i - 1] + 0.02);
  CHECK(sp.left.values.back() == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("DE combination of two identical CDs attains the bound on both sides") {
  const double sigma = 1.0, eps = 1.0;
  auto combined_factory = [sigma](int m, std::uint64_t rep) {
    int n = m / 2;
    double se = sigma / std::sqrt(static_cast<double>(n));
    Rng r1 = Rng::substream(11, 5, rep);
    Rng r2 = Rng::substream(11, 6, rep);
    std::vector<ConfDist> cds{cd_from_point_se(r1.normal(0.0, se), se),
                              cd_from_point_se(r2.normal(0.0, se), se)};
    return combine_de(cds);
  };
  std::vector<int> total_schedule;
  for (int n : kSchedule) total_schedule.push_back(2 * n);
  auto combined = slope_estimate(combined_factory, 0.0, eps, total_schedule, 300);

  std::vector<ComponentSlope> comps{{0.5, 0.5, 1.0}, {0.5, 0.5, 1.0}};
  auto report = slope_bound_report(comps, combined);
  CHECK(report.bound_left == doctest::Approx(0.5));
  CHECK(report.attains_left);
  CHECK(report.attains_right);
  CHECK_FALSE(report.exceeds_left);
  CHECK_FALSE(report.exceeds_right);
}

TEST_CASE("single-CD bound equals its own slope") {
  auto sp = slope_estimate(normal_cd_factory(1.0, 9, 7), 0.0, 1.0, kSchedule, 200);
  std::vector<ComponentSlope> one{{sp.left.extrapolated, sp.right.extrapolated, 1.0}};
  auto report = slope_bound_report(one, sp);
  CHECK(report.bound_left == doctest::Approx(sp.left.extrapolated));
  CHECK(report.attains_left);
  CHECK(report.attains_right);
}

TEST_CASE("slope input validation") {
  auto factory = normal_cd_factory(1.0, 9, 8);
  CHECK_THROWS_AS(slope_estimate(factory, 0.0, -1.0, kSchedule, 10), ParameterError);
  CHECK_THROWS_AS(slope_estimate(factory, 0.0, 1.0, {}, 10), InputError);
  CHECK_THROWS_AS(slope_estimate(factory, 0.0, 1.0, {500, 250}, 10), InputError);
  CHECK_THROWS_AS(slope_bound_report({}, SlopePair{}), InputError);
}

TEST_CASE("double-underflow tails are clamped and flagged") {
  // a CD whose cdf is an exact 0 below its support and that exposes no
  // log-space evaluator: the fallback pins the log at -745 and flags it
  auto factory = [](int, std::uint64_t) {
    ConfDist::Callables fns;
    fns.cdf = [](double y) { return y < 0.0 ? 0.0 : (y > 1.0 ? 1.0 : y); };
    CdMeta meta;
    meta.point_estimate = 0.5;
    meta.scale = 1.0;
    return ConfDist::from_callables(std::move(fns), {-10.0, 10.0}, Exactness::asymptotic,
                                    meta);
  };
  auto sp = slope_estimate(factory, 0.5, 2.0, {100}, 5);
  CHECK(sp.left.clamped);
  CHECK(sp.left.values[0] == doctest::Approx(745.0 / 100.0).epsilon(1e-9));
}
