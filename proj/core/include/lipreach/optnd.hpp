#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "lipreach/opt1d.hpp"

namespace lipreach {

/// One coordinate of the input that the search may move, with its range.
struct FreeDim {
  std::size_t index;
  double lower;
  double upper;
};

using ObjectiveND = std::function<double(const Vector&)>;

/// min over the box spanned by `dims` of objective(x), where every
/// coordinate not listed in `dims` keeps its value from `fixed`.
struct NestedProblem {
  std::vector<FreeDim> dims;
  Vector fixed;
  ObjectiveND objective;
  /// Lipschitz constant of the objective along any single coordinate.
  LipschitzBudget budget;
  double epsilon_total = 0.01;
  /// Tolerance of each nesting level; empty means epsilon_total / dims.size().
  std::vector<double> per_level_eps;
  std::size_t max_evaluations = 20'000'000;
  std::size_t max_iterations_per_level = 1'000'000;
  double k_floor = 1e-12;
  /// Stop as soon as the minimum is known to be below (an attained value)
  /// or at/above (the certified lower bound) this threshold.
  std::optional<double> decision_threshold;
};

enum class NestedMode { StrictNested, Adaptive };

std::string_view to_string(NestedMode m);
NestedMode nested_mode_from_string(std::string_view s);

struct NdOutcome {
  /// For minimisation `lower` is certified and `upper` is attained at
  /// best_point. maximize_nd mirrors this: `lower` is attained, `upper`
  /// is the certified bound.
  double lower = 0.0;
  double upper = 0.0;
  Vector best_point;
  bool converged = false;
  bool certified = false;
  bool k_breach = false;
  /// Stopped early because decision_threshold was settled.
  bool decided = false;
  std::size_t evaluations = 0;
  std::vector<std::size_t> per_level_iterations;
};

/// upper - min Z of a subproblem, or 0 once it has met its tolerance.
double characteristic(const SawtoothState& sub);

/// Tolerances actually used per level after defaulting and validation.
std::vector<double> resolve_level_eps(const NestedProblem& problem);

NdOutcome minimize_nd(const NestedProblem& problem, NestedMode mode = NestedMode::Adaptive);
NdOutcome maximize_nd(const NestedProblem& problem, NestedMode mode = NestedMode::Adaptive);

}  // namespace lipreach
