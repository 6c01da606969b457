#include "lleei/harness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using lleei::Complex;
using lleei::ComplexMatrix;
using lleei::ComplexVector;
using lleei::Regime;
using lleei::Trajectory;

namespace {

constexpr double kPi = std::numbers::pi;

Trajectory make_traj(const std::vector<double>& times, const std::vector<ComplexVector>& states, double eps = 1.0) {
  Trajectory t;
  t.times = times;
  t.states = states;
  t.epsilon = eps;
  return t;
}

ComplexVector v2(Complex a, Complex b) {
  ComplexVector v(2);
  v << a, b;
  return v;
}

lleei::OscillatorySystem free_rotation(double eps) {
  return lleei::OscillatorySystem("free", ComplexMatrix::Constant(1, 1, Complex(0, 1)), eps, 0.0,
                                  ComplexVector::Ones(1), 1.0, lleei::zero_oracle(1));
}

}  // namespace

TEST(GlobalError, IdenticalIsZero) {
  const auto t = make_traj({0.0, 0.5, 1.0}, {v2(1, 2), v2(3, 4), v2(5, 6)});
  const auto e = lleei::global_max_error(t, t);
  EXPECT_EQ(e.u, 0.0);
  EXPECT_FALSE(e.y.has_value());
}

TEST(GlobalError, MaxOverNodesAndSplit) {
  const auto ref = make_traj({0.0, 1.0}, {v2(0, 0), v2(0, 0)}, 0.5);
  const auto t = make_traj({0.0, 1.0}, {v2(0, 0), v2(3, 4)}, 0.5);
  const auto e = lleei::global_max_error(t, ref, 1);
  EXPECT_DOUBLE_EQ(e.u, 5.0);
  EXPECT_DOUBLE_EQ(*e.y, 3.0);
  EXPECT_DOUBLE_EQ(*e.ydot, 8.0);  // p error / eps
}

TEST(GlobalError, GridMismatch) {
  const auto a = make_traj({0.0, 1.0}, {v2(0, 0), v2(0, 0)});
  const auto b = make_traj({0.0, 0.5, 1.0}, {v2(0, 0), v2(0, 0), v2(0, 0)});
  const auto c = make_traj({0.0, 0.9}, {v2(0, 0), v2(0, 0)});
  EXPECT_THROW((void)lleei::global_max_error(a, b), std::invalid_argument);
  EXPECT_THROW((void)lleei::global_max_error(a, c), std::invalid_argument);
}

TEST(Subsample, KeepsEveryFactorNode) {
  const auto t = make_traj({0.0, 0.25, 0.5, 0.75, 1.0}, {v2(0, 0), v2(1, 0), v2(2, 0), v2(3, 0), v2(4, 0)});
  const auto s = lleei::subsample(t, 2);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.times, (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(s.states[2](0), Complex(4.0));
  EXPECT_THROW((void)lleei::subsample(t, 3), std::invalid_argument);
}

TEST(Thresholds, Example1) {
  const double eps = 1.0 / 256.0;
  const auto th = lleei::thresholds(lleei::builtin("example1", eps));
  EXPECT_NEAR(th.rho, 1.0, 1e-12);
  EXPECT_NEAR(th.h0, kPi * eps / 2.0, 1e-15);
  ASSERT_TRUE(th.h0_lower.has_value());
  EXPECT_NEAR(*th.h0_lower, 2.0 * kPi * eps, 1e-14);
}

TEST(Thresholds, Example2E6) {
  const double eps = 1.0 / 256.0;
  const auto th = lleei::thresholds(lleei::builtin("example2-E6", eps));
  EXPECT_NEAR(th.rho, 3.0, 1e-10);
  EXPECT_NEAR(th.mu, 2.0, 1e-10);
  EXPECT_NEAR(th.h0, kPi * eps / 6.0, 1e-13);
  EXPECT_NEAR(*th.h0_lower, kPi * eps, 1e-12);
}

TEST(Thresholds, ZeroEigenvalueHasNoLargeRegime) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = Complex(0, 2);
  const auto th = lleei::thresholds_for(a, 1.0);
  EXPECT_FALSE(th.h0_lower.has_value());
  EXPECT_EQ(lleei::classify(100.0, th), Regime::intermediate);
  EXPECT_THROW((void)lleei::thresholds_for(ComplexMatrix::Zero(2, 2), 1.0), std::invalid_argument);
}

TEST(Classify, Boundaries) {
  lleei::Thresholds th;
  th.h0 = 1.0;
  th.h0_lower = 4.0;
  EXPECT_EQ(lleei::classify(0.5, th), Regime::small_step);
  EXPECT_EQ(lleei::classify(1.0, th), Regime::intermediate);
  EXPECT_EQ(lleei::classify(4.0, th), Regime::intermediate);
  EXPECT_EQ(lleei::classify(4.5, th), Regime::large_step);
  EXPECT_STREQ(lleei::to_string(Regime::small_step), "small");
  EXPECT_STREQ(lleei::to_string(Regime::large_step), "large");
}

TEST(FitOrder, ExactPowerLaw) {
  const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> e;
  for (double x : h) e.push_back(3.0 * x * x);
  const auto fit = lleei::fit_order(h, e);
  ASSERT_TRUE(fit.slope.has_value());
  EXPECT_NEAR(*fit.slope, 2.0, 1e-12);
  EXPECT_EQ(fit.used, 4u);
}

TEST(FitOrder, NoisyPowerLaw) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> noise(0.8, 1.25);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> h;
    std::vector<double> e;
    for (int i = 0; i < 8; ++i) {
      h.push_back(std::pow(0.5, i));
      e.push_back(std::pow(h.back(), 3) * noise(rng));
    }
    EXPECT_NEAR(*lleei::fit_order(h, e, 0.0).slope, 3.0, 0.15);
  }
}

TEST(FitOrder, FloorAndDegenerateInputs) {
  const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
  const auto all_low = lleei::fit_order(h, {1e-15, 1e-16, 1e-16, 1e-17});
  EXPECT_FALSE(all_low.slope.has_value());
  EXPECT_EQ(all_low.below_floor, 4u);

  const auto two = lleei::fit_order(h, {1e-4, 1e-5, 1e-15, 1e-16});
  EXPECT_FALSE(two.slope.has_value());
  EXPECT_EQ(two.used, 2u);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto with_nan = lleei::fit_order(h, {1e-2, nan, 1e-4, 1e-5});
  EXPECT_EQ(with_nan.used, 3u);

  EXPECT_FALSE(lleei::fit_order({1.0, 1.0, 1.0}, {1e-3, 2e-3, 3e-3}).slope.has_value());
  EXPECT_THROW((void)lleei::fit_order({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST(ReferencePlanning, SharedGridContainsAllCoarseGrids) {
  const auto sys = lleei::builtin("example1", 0.25);
  const auto ref = lleei::shared_reference(sys, {12, 24, 48});
  ASSERT_TRUE(ref.has_value());
  const std::size_t nodes = ref->size() - 1;
  for (std::size_t n : {12u, 24u, 48u}) {
    EXPECT_EQ(nodes % n, 0u);
    EXPECT_EQ(lleei::subsample(*ref, nodes / n).size(), n + 1);
  }
  // steps 7 and 11 and 13 share no small common refinement
  lleei::ReferenceSettings tight;
  tight.share_limit = 1;
  EXPECT_FALSE(lleei::shared_reference(sys, {7, 11, 13, 17, 19}, tight).has_value());
}

TEST(ReferencePlanning, ErrorEstimateIsSmall) {
  const auto sys = lleei::builtin("example1", 0.25);
  EXPECT_LT(lleei::reference_error_estimate(sys, 24), 1e-12);
}

TEST(SweepH, FreeRotationErrorsAreRoundOff) {
  const auto report = lleei::sweep_h(free_rotation(0.1), 2, {0.5, 0.25, 0.125});
  ASSERT_EQ(report.points.size(), 3u);
  for (const auto& p : report.points) {
    ASSERT_TRUE(p.error.has_value());
    EXPECT_LT(p.error->u, 1e-11);
  }
  EXPECT_FALSE(report.small.u.slope.has_value());
  EXPECT_FALSE(report.large.u.slope.has_value());
}

TEST(SweepH, RejectsUnsortedGrid) {
  EXPECT_THROW((void)lleei::sweep_h(free_rotation(0.1), 1, {0.1, 0.2}), std::invalid_argument);
}

TEST(SweepH, ErrorDecreasesWithStepInSmallRegime) {
  const auto sys = lleei::builtin("example1", 0.5);
  const auto report = lleei::sweep_h(sys, 1, {0.2, 0.1, 0.05, 0.025});
  for (std::size_t i = 1; i < report.points.size(); ++i)
    EXPECT_LT(report.points[i].error->u, report.points[i - 1].error->u);
  for (const auto& p : report.points) EXPECT_EQ(p.regime, Regime::small_step);
  ASSERT_TRUE(report.small.u.slope.has_value());
  EXPECT_NEAR(*report.small.u.slope, 2.0, 0.3);
  const auto checks = lleei::assess(report);
  ASSERT_EQ(checks.size(), 1u);
  EXPECT_TRUE(checks[0].passed);
}

TEST(SweepEps, SinglePointHasNoSlope) {
  const auto report = lleei::sweep_eps([](double e) { return lleei::builtin("example1", e); }, 1, 0.1, {0.5});
  ASSERT_EQ(report.points.size(), 1u);
  EXPECT_TRUE(report.points[0].error.has_value());
  EXPECT_FALSE(report.small.y.slope.has_value());
  EXPECT_FALSE(report.large.y.slope.has_value());
  EXPECT_TRUE(report.second_order);
  EXPECT_NEAR(report.threshold_small, 2.0 * 0.1 / kPi, 1e-12);
  EXPECT_NEAR(*report.threshold_large, 0.1 / (2.0 * kPi), 1e-12);
  EXPECT_THROW((void)lleei::sweep_eps([](double e) { return lleei::builtin("example1", e); }, 1, 0.1, {}),
               std::invalid_argument);
}

TEST(Assess, MissingFitFails) {
  lleei::ErrorReport r;
  r.axis = "h";
  r.k = 2;
  lleei::SweepPoint p;
  p.param = 0.1;
  p.regime = Regime::small_step;
  p.error = lleei::ErrorMetrics{1e-3, std::nullopt, std::nullopt};
  r.points = {p};
  const auto checks = lleei::assess(r);
  ASSERT_EQ(checks.size(), 1u);
  EXPECT_FALSE(checks[0].passed);
  EXPECT_FALSE(checks[0].measured.has_value());
  EXPECT_DOUBLE_EQ(checks[0].expected, 3.0);
}
