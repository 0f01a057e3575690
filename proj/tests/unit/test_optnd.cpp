#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "lipreach/error.hpp"
#include "lipreach/lipschitz.hpp"
#include "lipreach/optnd.hpp"
#include "lipreach/synthetic.hpp"

using namespace lipreach;

namespace {

NestedProblem box_problem(ObjectiveND f, std::vector<std::pair<double, double>> box, double k, double eps) {
  NestedProblem p;
  p.fixed = Vector::Zero(static_cast<Eigen::Index>(box.size()));
  for (std::size_t i = 0; i < box.size(); ++i) p.dims.push_back({i, box[i].first, box[i].second});
  p.objective = std::move(f);
  p.budget = LipschitzBudget::fixed(k);
  p.epsilon_total = eps;
  return p;
}

struct Scan {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  double step = 0.0;
};

/// Nested loops over an (n + 1) x (n + 1) lattice, both ends included.
Scan scan2(const ObjectiveND& f, double a0, double b0, double a1, double b1, int n) {
  Scan s;
  s.step = std::max(b0 - a0, b1 - a1) / n;
  Vector x(2);
  for (int i = 0; i <= n; ++i) {
    x[0] = i == n ? b0 : a0 + (b0 - a0) * i / n;
    for (int j = 0; j <= n; ++j) {
      x[1] = j == n ? b1 : a1 + (b1 - a1) * j / n;
      const double v = f(x);
      s.min = std::min(s.min, v);
      s.max = std::max(s.max, v);
    }
  }
  return s;
}

const NestedMode kModes[] = {NestedMode::StrictNested, NestedMode::Adaptive};

}  // namespace

TEST(MinimizeND, ConstantFunction) {
  for (NestedMode mode : kModes) {
    const auto p = box_problem([](const Vector&) { return 0.0; }, {{0, 1}, {0, 1}}, 1.0, 0.01);
    const auto r = minimize_nd(p, mode);
    EXPECT_EQ(r.upper, 0.0) << to_string(mode);
    EXPECT_GE(r.lower, -0.01) << to_string(mode);
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(r.certified);
  }
}

TEST(MinimizeND, ShiftedParaboloid) {
  auto f = [](const Vector& x) { return std::pow(x[0] - 0.3, 2) + std::pow(x[1] - 0.7, 2); };
  const Scan s = scan2(f, 0, 1, 0, 1, 2000);
  EXPECT_EQ(s.min, 0.0);
  for (NestedMode mode : kModes) {
    const auto r = minimize_nd(box_problem(f, {{0, 1}, {0, 1}}, 2.0, 0.01), mode);
    EXPECT_TRUE(r.converged) << to_string(mode);
    EXPECT_LE(r.lower, s.min + 1e-9);
    EXPECT_GE(r.upper, s.min);
    EXPECT_LE(r.upper - r.lower, 0.01 * (1 + 1e-12));
    EXPECT_NEAR(r.best_point[0], 0.3, 0.05);
    EXPECT_NEAR(r.best_point[1], 0.7, 0.05);
    EXPECT_EQ(f(r.best_point), r.upper);
  }
}

TEST(MinimizeND, TanhNetworkOverWideBox) {
  RandomNetSpec spec;
  spec.hidden = {8};
  spec.activations = {Activation::Tanh};
  spec.layer_norm = 0.6;
  spec.box = {0.0, 10.0};
  spec.seed = 17;
  const auto net = random_network(spec);
  const double k = network_constant(net).network_constant;
  auto f = [&net](const Vector& x) { return net.forward(x)[0]; };
  const Scan s = scan2(f, 0, 10, 0, 10, 2000);
  const double lattice = k * 2 * s.step / 2;
  for (NestedMode mode : kModes) {
    const auto r = minimize_nd(box_problem(f, {{0, 10}, {0, 10}}, k, 0.01), mode);
    EXPECT_TRUE(r.certified) << to_string(mode);
    EXPECT_LE(r.lower, s.min + 1e-9);
    EXPECT_LE(s.min - lattice, r.upper + 1e-9);
    EXPECT_GE(r.lower, s.min - lattice - 0.01);
  }
}

TEST(MinimizeND, EvaluationErrorCarriesFullInput) {
  NestedProblem p = box_problem([](const Vector& x) { return x[1] > 0.5 ? NAN : x[0]; }, {{0, 1}, {0, 1}}, 2, 0.01);
  p.fixed = Vector::Zero(2);
  try {
    minimize_nd(p);
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    ASSERT_EQ(e.point().size(), 2u);
    EXPECT_GT(e.point()[1], 0.5);
  }
}

TEST(MinimizeND, FixedCoordinatesStayFixed) {
  NestedProblem p;
  p.fixed = Vector::Constant(3, 0.25);
  p.dims = {{2, 0.0, 1.0}};
  p.objective = [](const Vector& x) {
    EXPECT_EQ(x[0], 0.25);
    EXPECT_EQ(x[1], 0.25);
    return std::abs(x[2] - 0.6);
  };
  p.budget = LipschitzBudget::fixed(1.5);
  const auto r = minimize_nd(p);
  EXPECT_NEAR(r.best_point[2], 0.6, 0.01);
  EXPECT_EQ(r.best_point[0], 0.25);
}

TEST(MinimizeND, EvaluationCapReportsNotConverged) {
  NestedProblem p = box_problem([](const Vector& x) { return std::sin(30 * x[0]) * std::cos(30 * x[1]); },
                                {{0, 1}, {0, 1}}, 45, 1e-4);
  p.max_evaluations = 500;
  for (NestedMode mode : kModes) {
    const auto r = minimize_nd(p, mode);
    EXPECT_FALSE(r.converged) << to_string(mode);
    EXPECT_FALSE(r.certified);
    EXPECT_LE(r.lower, r.upper);
  }
}

TEST(MinimizeND, RejectsBadProblems) {
  NestedProblem p = box_problem([](const Vector&) { return 0.0; }, {{0, 1}, {0, 1}}, 1, 0.01);
  p.per_level_eps = {0.008, 0.008};
  EXPECT_THROW(minimize_nd(p), DomainError);
  p.per_level_eps = {0.01};
  EXPECT_THROW(minimize_nd(p), DomainError);
  p.per_level_eps.clear();
  p.dims[1].upper = p.dims[1].lower;
  EXPECT_THROW(minimize_nd(p), DomainError);
  p.dims.clear();
  EXPECT_THROW(minimize_nd(p), DomainError);
}

TEST(MinimizeND, DefaultSplitsEpsilonEvenly) {
  const auto p = box_problem([](const Vector&) { return 0.0; }, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}, 1, 0.02);
  const auto eps = resolve_level_eps(p);
  ASSERT_EQ(eps.size(), 4u);
  for (double e : eps) EXPECT_DOUBLE_EQ(e, 0.005);
}

TEST(MinimizeND, DecisionThresholdStopsEarly) {
  auto f = [](const Vector& x) { return x[0] + x[1] - 0.5; };
  NestedProblem p = box_problem(f, {{0, 1}, {0, 1}}, 2, 1e-4);
  const auto full = minimize_nd(p);
  p.decision_threshold = 0.0;
  for (NestedMode mode : kModes) {
    const auto r = minimize_nd(p, mode);
    EXPECT_TRUE(r.decided) << to_string(mode);
    EXPECT_LT(r.upper, 0.0);
    EXPECT_LE(r.evaluations, full.evaluations);
  }
  // A threshold below the minimum is settled by the certified bound.
  p.decision_threshold = -1.0;
  const auto r = minimize_nd(p);
  EXPECT_TRUE(r.decided);
  EXPECT_GE(r.lower, -1.0);
}

TEST(Characteristic, ConvergedConstantIsZero) {
  OptConfig cfg;
  cfg.epsilon = 0.01;
  SawtoothState st(0, 1, PointEstimate::exact(2), PointEstimate::exact(2), cfg);
  while (!st.converged()) st.insert(st.propose(), PointEstimate::exact(2));
  EXPECT_EQ(characteristic(st), 0.0);
}

TEST(Characteristic, UpperMinusMinZ) {
  OptConfig cfg;
  cfg.epsilon = 1e-3;
  cfg.lipschitz = LipschitzBudget::fixed(1.6);
  SawtoothState st(0, 1, PointEstimate::exact(1), PointEstimate::exact(1), cfg);
  EXPECT_DOUBLE_EQ(st.lower(), 0.2);
  EXPECT_DOUBLE_EQ(characteristic(st), 0.8);

  // Splitting the symmetric interval of a flat objective halves the gap.
  st.insert(st.propose(), PointEstimate::exact(1));
  EXPECT_DOUBLE_EQ(characteristic(st), 0.4);
}

TEST(MaximizeND, ConstantFive) {
  for (NestedMode mode : kModes) {
    const auto r = maximize_nd(box_problem([](const Vector&) { return 5.0; }, {{0, 1}, {0, 1}}, 1, 0.01), mode);
    EXPECT_EQ(r.lower, 5.0);
    EXPECT_GE(r.upper, 5.0);
    EXPECT_LE(r.upper - r.lower, 0.01);
  }
}

TEST(MaximizeND, IdentityOnUnitInterval) {
  const auto r = maximize_nd(box_problem([](const Vector& x) { return x[0]; }, {{0, 1}}, 1.5, 0.01));
  EXPECT_GE(r.upper, 1.0);
  EXPECT_LE(r.upper, 1.01);
  EXPECT_EQ(r.best_point[0], 1.0);
}

TEST(MaximizeND, ReluNetworkAgainstScan) {
  RandomNetSpec spec;
  spec.hidden = {12, 6};
  spec.activations = {Activation::Relu};
  spec.layer_norm = 1.2;
  spec.seed = 23;
  const auto net = random_network(spec);
  const double k = network_constant(net).network_constant;
  auto f = [&net](const Vector& x) { return net.forward(x)[0]; };
  const Scan s = scan2(f, 0, 1, 0, 1, 1000);
  for (NestedMode mode : kModes) {
    const auto r = maximize_nd(box_problem(f, {{0, 1}, {0, 1}}, k, 0.01), mode);
    EXPECT_GE(r.upper, s.max - 1e-9) << to_string(mode);
    EXPECT_GE(r.upper - r.lower, 0.0);
    EXPECT_LE(r.upper - r.lower, 0.01 * (1 + 1e-12));
    EXPECT_LE(r.lower, s.max + k * s.step);
  }
}

// Properties

class RandomNets : public ::testing::TestWithParam<int> {};

TEST_P(RandomNets, ModesAndOrderingsContainScanExtrema) {
  const int seed = GetParam();
  RandomNetSpec spec;
  spec.hidden = {static_cast<std::size_t>(4 + 3 * seed)};
  spec.activations = {seed % 3 == 0 ? Activation::Relu : seed % 3 == 1 ? Activation::Sigmoid : Activation::Tanh};
  spec.layer_norm = 1.5;
  spec.seed = static_cast<std::uint64_t>(100 + seed);
  const auto net = random_network(spec);
  const double k = network_constant(net).network_constant;
  auto f = [&net](const Vector& x) { return net.forward(x)[0]; };
  const Scan s = scan2(f, 0, 1, 0, 1, 1000);
  const double lattice = k * s.step;

  for (NestedMode mode : kModes) {
    for (bool swap : {false, true}) {
      NestedProblem p = box_problem(f, {{0, 1}, {0, 1}}, k, 0.01);
      if (swap) std::swap(p.dims[0], p.dims[1]);
      const auto lo = minimize_nd(p, mode);
      const auto hi = maximize_nd(p, mode);
      SCOPED_TRACE(std::string(to_string(mode)) + (swap ? " swapped" : ""));
      EXPECT_TRUE(lo.converged && hi.converged);
      EXPECT_LE(lo.lower, s.min + 1e-9);
      EXPECT_GE(hi.upper, s.max - 1e-9);
      EXPECT_LE(lo.upper - lo.lower, 0.01 * (1 + 1e-12));
      EXPECT_LE(hi.upper - hi.lower, 0.01 * (1 + 1e-12));
      EXPECT_LE(s.min - lattice, lo.upper + 1e-9);
      EXPECT_GE(s.max + lattice, hi.lower - 1e-9);
      EXPECT_EQ(f(lo.best_point), lo.upper);
      EXPECT_EQ(f(hi.best_point), hi.lower);
    }
  }
}

TEST_P(RandomNets, EvaluationCountIgnoresPaddedWidth) {
  const int seed = GetParam();
  RandomNetSpec spec;
  spec.hidden = {6, 5};
  spec.activations = {seed % 2 ? Activation::Tanh : Activation::Relu};
  spec.seed = static_cast<std::uint64_t>(200 + seed);
  const auto net = random_network(spec);
  const auto wide = pad_hidden_width(net, 2);
  ASSERT_GT(wide.neuron_count(), net.neuron_count());
  const double k = network_constant(net).network_constant;
  EXPECT_EQ(network_constant(wide).network_constant, k);

  for (NestedMode mode : kModes) {
    const auto a = minimize_nd(box_problem([&](const Vector& x) { return net.forward(x)[0]; }, {{0, 1}, {0, 1}}, k, 0.01), mode);
    const auto b = minimize_nd(box_problem([&](const Vector& x) { return wide.forward(x)[0]; }, {{0, 1}, {0, 1}}, k, 0.01), mode);
    EXPECT_EQ(a.evaluations, b.evaluations) << to_string(mode);
    EXPECT_EQ(a.lower, b.lower);
    EXPECT_EQ(a.upper, b.upper);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomNets, ::testing::Range(0, 6));

TEST(MinimizeNDProperty, ThreeDimensionsMatchScan) {
  RandomNetSpec spec;
  spec.input_dim = 3;
  spec.hidden = {10};
  spec.activations = {Activation::Sigmoid};
  spec.layer_norm = 2.0;
  spec.seed = 5;
  const auto net = random_network(spec);
  const double k = network_constant(net).network_constant;
  auto f = [&net](const Vector& x) { return net.forward(x)[0]; };
  double best = INFINITY;
  const int n = 100;
  Vector x(3);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int l = 0; l <= n; ++l) {
        x << 0.1 * i / n, 0.1 * j / n, 0.1 * l / n;
        best = std::min(best, f(x));
      }
  for (NestedMode mode : kModes) {
    const auto r = minimize_nd(box_problem(f, {{0, 0.1}, {0, 0.1}, {0, 0.1}}, k, 0.003), mode);
    EXPECT_TRUE(r.certified) << to_string(mode);
    EXPECT_LE(r.lower, best + 1e-9);
    EXPECT_LE(best - k * 3 * 0.001 / 2, r.upper + 1e-9);
  }
}
