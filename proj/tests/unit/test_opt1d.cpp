#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lipreach/error.hpp"
#include "lipreach/opt1d.hpp"
#include "oracles.hpp"
#include "suite1d.hpp"

using namespace lipreach;

namespace {

OptConfig config(double k, double eps) {
  OptConfig cfg;
  cfg.lipschitz = LipschitzBudget::fixed(k);
  cfg.epsilon = eps;
  return cfg;
}

}  // namespace

TEST(NewPoint, SymmetricValuesGiveMidpoint) { EXPECT_DOUBLE_EQ(new_point(0, 1, 0, 0, 1).point, 0.5); }

TEST(NewPoint, FormulaArithmetic) {
  EXPECT_DOUBLE_EQ(new_point(0, 1, 0, 1, 2).point, 0.25);
  EXPECT_DOUBLE_EQ(new_point(0, 1, 1, 0, 2).point, 0.75);
  EXPECT_FALSE(new_point(0, 1, 1, 0, 2).clamped);
}

TEST(NewPoint, OutsideIntervalIsClampedAndFlagged) {
  // K too small for a unit rise over a unit interval.
  const auto np = new_point(0, 1, 0, 1, 0.4);
  EXPECT_TRUE(np.clamped);
  EXPECT_GT(np.point, 0.0);
  EXPECT_LT(np.point, 1.0);
}

TEST(NewPoint, Errors) {
  EXPECT_THROW(new_point(1, 1, 0, 0, 1), DomainError);
  EXPECT_THROW(new_point(2, 1, 0, 0, 1), DomainError);
  EXPECT_THROW(new_point(0, 1, 0, 0, 0), DomainError);
}

TEST(IntervalMin, Examples) {
  EXPECT_DOUBLE_EQ(interval_min(0, 1, 0, 0, 1), -0.5);
  EXPECT_DOUBLE_EQ(interval_min(0, 1, 3, 3, 0), 3.0);
  EXPECT_DOUBLE_EQ(interval_min(0, 2, 1, 3, 2), 0.0);
  EXPECT_THROW(interval_min(1, 0, 0, 0, 1), DomainError);
}

TEST(IntervalMin, NeverAboveEndpointsForSoundK) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double wl = u(rng), wr = u(rng);
    const double k = std::abs(wr - wl) + 0.01;  // slope over unit width
    EXPECT_LE(interval_min(0, 1, wl, wr, k), std::min(wl, wr));
  }
}

TEST(Minimize1D, ConstantFunction) {
  const auto r = minimize_1d([](double) { return 0.0; }, 0, 1, config(1, 0.01));
  EXPECT_EQ(r.upper, 0.0);
  EXPECT_GE(r.lower, -0.01);
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(r.certified);
}

TEST(Minimize1D, IncreasingLine) {
  const auto r = minimize_1d([](double x) { return x; }, 0, 1, config(2, 1e-3));
  EXPECT_LE(std::abs(r.best_point), 1e-3);
  EXPECT_LE(std::abs(r.upper), 1e-3);
  EXPECT_LE(r.lower, 0.0);
}

TEST(Minimize1D, SineAgainstDenseScan) {
  const double two_pi = 2.0 * std::numbers::pi;
  const auto want = oracle::scan_min([](double x) { return std::sin(x); }, 0, two_pi, 1'000'000);
  EXPECT_NEAR(want.value, -1.0, 1e-10);
  const auto r = minimize_1d([](double x) { return std::sin(x); }, 0, two_pi, config(1.1, 1e-3));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.lower, -1.0);
  EXPECT_GE(r.upper, -1.0);
  EXPECT_LE(r.upper - r.lower, 1e-3);
  EXPECT_NEAR(r.best_point, want.at, 0.01);
}

TEST(Minimize1D, NonFiniteValueReportsAbscissa) {
  try {
    minimize_1d([](double x) { return x > 0.7 ? NAN : -x; }, 0, 1, config(1, 1e-3));
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    ASSERT_EQ(e.point().size(), 1u);
    EXPECT_GT(e.point()[0], 0.7);
  }
}

TEST(Minimize1D, ZeroConstantIsDegenerate) {
  const auto r = minimize_1d([](double x) { return 2.0 + 0.0 * x; }, 0, 1, config(0.0, 1e-3));
  EXPECT_EQ(r.lower, 2.0);
  EXPECT_EQ(r.upper, 2.0);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.evaluations, 2u);
}

TEST(Minimize1D, IterationBudgetReportsNotConverged) {
  OptConfig cfg = config(50, 1e-9);
  cfg.max_iterations = 5;
  const auto r = minimize_1d([](double x) { return std::sin(20 * x); }, 0, 3, cfg);
  EXPECT_FALSE(r.converged);
  EXPECT_FALSE(r.certified);
  EXPECT_EQ(r.iterations, 5u);
  EXPECT_LE(r.lower, r.upper);
}

TEST(Minimize1D, UnderestimatedConstantRaisesBreach) {
  const auto r = minimize_1d([](double x) { return std::sin(8 * x); }, 0, 3, config(1.0, 1e-3));
  EXPECT_TRUE(r.k_breach);
  EXPECT_FALSE(r.certified);
}

TEST(Minimize1D, DynamicModeFindsSineMinimum) {
  OptConfig cfg;
  cfg.epsilon = 1e-3;
  cfg.lipschitz = LipschitzBudget::dynamic(1.5);
  const double two_pi = 2.0 * std::numbers::pi;
  const auto r = minimize_1d([](double x) { return std::sin(x); }, 0, two_pi, cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_FALSE(r.certified);
  EXPECT_NEAR(r.upper, -1.0, 1e-3);
}

TEST(Minimize1D, DynamicModeProbesSymmetricObjective) {
  // Equal endpoint values would give a zero slope estimate without the probe.
  OptConfig cfg;
  cfg.epsilon = 1e-3;
  cfg.lipschitz = LipschitzBudget::dynamic(2.0);
  const auto r = minimize_1d([](double x) { return -std::sin(std::numbers::pi * x); }, 0, 1, cfg);
  EXPECT_NEAR(r.upper, -1.0, 1e-3);
}

TEST(SawtoothState, InitialState) {
  SawtoothState st(0, 1, PointEstimate::exact(0), PointEstimate::exact(1), config(2, 1e-3));
  ASSERT_EQ(st.points().size(), 2u);
  ASSERT_EQ(st.interval_mins().size(), 1u);
  EXPECT_DOUBLE_EQ(st.lower(), interval_min(0, 1, 0, 1, 2));
  EXPECT_EQ(st.upper(), 0.0);
  EXPECT_EQ(st.best_point(), 0.0);
}

TEST(SawtoothState, RejectsPointOutsideInterval) {
  SawtoothState st(0, 1, PointEstimate::exact(0), PointEstimate::exact(0), config(1, 1e-3));
  EXPECT_THROW(st.insert({0, 1.0, false}, PointEstimate::exact(0)), DomainError);
  EXPECT_THROW(st.insert({1, 0.5, false}, PointEstimate::exact(0)), DomainError);
}

TEST(SawtoothState, InexactEstimatesOnlyBreachWhenBracketsConflict) {
  // Values 1.05 and 0 are further apart than K = 1 allows, but the true
  // value at 0 may be as low as 0.95.
  SawtoothState fits(0.0, 1.0, {1.05, 0.95}, PointEstimate::exact(0.0), config(1.0, 1e-3));
  EXPECT_TRUE(fits.propose().clamped);
  EXPECT_FALSE(fits.k_breached());

  SawtoothState conflict(0.0, 1.0, {1.2, 1.1}, PointEstimate::exact(0.0), config(1.0, 1e-3));
  conflict.propose();
  EXPECT_TRUE(conflict.k_breached());
}

TEST(SawtoothState, CertifiedLowerUsesFloors) {
  SawtoothState st(0, 1, {1.0, 0.5}, {1.0, 1.0}, config(1, 1e-3));
  EXPECT_DOUBLE_EQ(st.lower(), 0.5);
  EXPECT_DOUBLE_EQ(st.certified_lower(), 0.25);
}

// Properties, checked on the shared analytic suite.

class Suite1D : public ::testing::TestWithParam<suite1d::Objective> {};

TEST_P(Suite1D, BoundsAreMonotone) {
  const auto& o = GetParam();
  std::vector<IterationRecord> recs;
  const auto r = minimize_1d(o.f, o.a, o.b, config(o.k, 1e-3), [&](const IterationRecord& rec) { recs.push_back(rec); });
  ASSERT_EQ(r.lower_history.size(), r.iterations + 1);
  for (std::size_t i = 1; i < r.lower_history.size(); ++i) {
    EXPECT_GE(r.lower_history[i], r.lower_history[i - 1]);
    EXPECT_LE(r.upper_history[i], r.upper_history[i - 1]);
    if (recs[i - 1].unique_minimum) EXPECT_GT(r.lower_history[i], r.lower_history[i - 1]);
  }
}

TEST_P(Suite1D, LowerRisesEveryRound) {
  const auto& o = GetParam();
  std::size_t last_round = 0;
  std::size_t splits = 0;
  const auto r = minimize_1d(o.f, o.a, o.b, config(o.k, 1e-3), [&](const IterationRecord& rec) {
    EXPECT_GE(rec.round, last_round);
    EXPECT_LE(rec.round, last_round + 1);
    last_round = rec.round;
    ++splits;
  });
  EXPECT_EQ(last_round, r.rounds);
  EXPECT_EQ(splits, r.iterations);
  ASSERT_EQ(r.round_lower_history.size(), r.rounds + 1);
  for (std::size_t i = 1; i < r.round_lower_history.size(); ++i) {
    EXPECT_GT(r.round_lower_history[i], r.round_lower_history[i - 1]);
    EXPECT_LE(r.round_upper_history[i], r.round_upper_history[i - 1]);
  }
  EXPECT_EQ(r.round_lower_history.back(), r.lower_history.back());
}

TEST_P(Suite1D, ImprovementIdentityEveryIteration) {
  const auto& o = GetParam();
  minimize_1d(o.f, o.a, o.b, config(o.k, 1e-3), [&](const IterationRecord& rec) {
    ASSERT_FALSE(rec.clamped);
    const double scale = std::max(1.0, std::abs(rec.value));
    EXPECT_NEAR(2.0 * rec.z_left - rec.z_star, rec.value, 1e-9 * scale);
    EXPECT_NEAR(2.0 * rec.z_right - rec.z_star, rec.value, 1e-9 * scale);
    EXPECT_GT(rec.z_left, rec.z_star - 1e-12 * scale);
    if (rec.upper_after - rec.lower_after > 1e-3) EXPECT_GT(rec.z_left - rec.z_star, 0.5e-3);
  });
}

TEST_P(Suite1D, ContainsDenseScanMinimum) {
  const auto& o = GetParam();
  const auto want = oracle::scan_min(o.f, o.a, o.b, 1'000'000);
  const auto r = minimize_1d(o.f, o.a, o.b, config(o.k, 1e-3));
  EXPECT_TRUE(r.certified);
  EXPECT_LE(r.upper - r.lower, 1e-3);
  // The scan value is attained, so it sits at or above the true minimum,
  // and at most K * step / 2 above it.
  EXPECT_LE(r.lower, want.value + 1e-9);
  EXPECT_LE(want.value - o.k * (o.b - o.a) / 2e6, r.upper + 1e-9);
}

TEST_P(Suite1D, SawtoothStaysBelowObjective) {
  const auto& o = GetParam();
  OptConfig cfg = config(o.k, 1e-2);
  SawtoothState st(o.a, o.b, PointEstimate::exact(o.f(o.a)), PointEstimate::exact(o.f(o.b)), cfg);
  for (int i = 0; i < 25 && !st.converged(); ++i) {
    const auto p = st.propose();
    st.insert(p, PointEstimate::exact(o.f(p.point)));
  }
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(o.a, o.b);
  for (int t = 0; t < 100; ++t) {
    const double x = u(rng);
    double h = -INFINITY;
    for (std::size_t j = 0; j < st.points().size(); ++j)
      h = std::max(h, st.values()[j] - o.k * std::abs(x - st.points()[j]));
    EXPECT_LE(h, o.f(x) + 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Analytic, Suite1D, ::testing::ValuesIn(suite1d::objectives()),
                         [](const auto& info) { return info.param.name; });
