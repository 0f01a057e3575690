#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "lipreach/lipschitz.hpp"
#include "lipreach/opt1d.hpp"
#include "lipreach/reach.hpp"
#include "lipreach/satgen.hpp"
#include "lipreach/synthetic.hpp"

using namespace lipreach;

namespace {

// state.range(0) is -log10(epsilon).
void BM_Minimize1D(benchmark::State& state) {
  OptConfig cfg;
  cfg.epsilon = std::pow(10.0, -static_cast<double>(state.range(0)));
  cfg.lipschitz = LipschitzBudget::fixed(4.5);
  const auto f = [](double x) { return std::sin(x) + std::sin(10.0 * x / 3.0); };
  std::size_t evals = 0;
  for (auto _ : state) {
    const auto r = minimize_1d(f, 2.7, 7.5, cfg);
    evals = r.evaluations;
    benchmark::DoNotOptimize(r.lower);
  }
  state.counters["evaluations"] = static_cast<double>(evals);
}
BENCHMARK(BM_Minimize1D)->DenseRange(2, 5);

void BM_Forward(benchmark::State& state) {
  RandomNetSpec spec;
  spec.input_dim = 16;
  spec.hidden = {static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0))};
  spec.activations = {Activation::Tanh};
  spec.output_dim = 10;
  const auto net = random_network(spec);
  const Vector x = Vector::Constant(16, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(net.forward(x));
}
BENCHMARK(BM_Forward)->RangeMultiplier(4)->Range(8, 512);

void BM_SpectralNorm(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Matrix w(n, n);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm_bound(w));
}
BENCHMARK(BM_SpectralNorm)->RangeMultiplier(2)->Range(16, 1024);

// One row of the desk suite: range over [0, 10]^2 at epsilon 0.01.
void BM_DeskSuiteRange(benchmark::State& state) {
  const auto suite = benchmark_suite(true);
  const auto& entry = suite[static_cast<std::size_t>(state.range(0))];
  const QuerySubspace box{Vector::Zero(2), {0, 1}, {{0.0, 10.0}, {0.0, 10.0}}};
  ReachOptions opts;
  opts.nested = state.range(1) ? NestedMode::Adaptive : NestedMode::StrictNested;
  std::size_t evals = 0;
  for (auto _ : state) {
    const auto r = output_range(entry.net, box, 0, EvalTap::Output, opts);
    evals = r.evaluations;
    benchmark::DoNotOptimize(r.lower);
  }
  state.SetLabel(entry.net.name());
  state.counters["evaluations"] = static_cast<double>(evals);
}
BENCHMARK(BM_DeskSuiteRange)->ArgsProduct({{0, 2, 5, 6, 8, 11}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_CornerDecision(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto n = static_cast<std::size_t>(state.range(0));
  CnfFormula f{n, {}};
  for (std::size_t i = 0; i < 4 * n; ++i) {
    Clause c;
    for (int j = 0; j < 3; ++j) c.push_back({1 + rng() % n, rng() % 2 == 0});
    f.clauses.push_back(c);
  }
  for (auto _ : state) benchmark::DoNotOptimize(corner_decision(f).corner_min);
}
BENCHMARK(BM_CornerDecision)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
