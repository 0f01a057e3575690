#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "lipreach/lipschitz.hpp"
#include "lipreach/model.hpp"
#include "lipreach/optnd.hpp"
#include "lipreach/subspace.hpp"

namespace lipreach {

/// Lipschitz function o applied to the network's output vector.
class OutputFunction {
 public:
  enum class Kind {
    Project,    // c_label
    Margin,     // max_{i != label} c_i - c_label
    MaxOutput,  // max_i c_i
  };

  static OutputFunction project(std::size_t label) { return {Kind::Project, label}; }
  static OutputFunction margin(std::size_t label) { return {Kind::Margin, label}; }
  static OutputFunction max_output() { return {Kind::MaxOutput, 0}; }

  Kind kind() const noexcept { return kind_; }
  std::size_t label() const noexcept { return label_; }

  double operator()(const Vector& c) const;
  /// Euclidean Lipschitz constant of o itself.
  double lipschitz() const noexcept;
  /// Throws ShapeError if o cannot be applied to `width` outputs.
  void check_width(std::size_t width) const;

 private:
  OutputFunction(Kind k, std::size_t label) : kind_(k), label_(label) {}

  Kind kind_;
  std::size_t label_;
};

std::string_view to_string(OutputFunction::Kind k);

struct ReachOptions {
  double epsilon = 0.01;
  LipschitzMode mode = LipschitzMode::Static;
  double eta = kDefaultEta;
  NestedMode nested = NestedMode::Adaptive;
  /// 1 runs the minimisation and maximisation back to back; more runs them
  /// concurrently. Results do not depend on this value.
  std::size_t threads = 1;
  std::size_t max_evaluations = 20'000'000;
};

/// Certified outer bracket [lower, upper] of o(f(x)) over the subspace.
struct ReachResult {
  double lower = 0.0;
  double upper = 0.0;
  double diameter = 0.0;
  Vector min_witness;
  Vector max_witness;
  double min_attained = 0.0;
  double max_attained = 0.0;
  double epsilon = 0.0;
  bool converged = false;
  bool certified = false;
  std::size_t evaluations = 0;
  double wall_ms = 0.0;
  /// Static network constant up to the tap (reported even in dynamic mode).
  LipschitzBudget network_budget;
  /// Constant handed to the optimiser: o's constant times the network's.
  double objective_constant = 0.0;
};

ReachResult reachability(const NetworkModel& net, const QuerySubspace& subspace,
                         const OutputFunction& o, EvalTap tap, const ReachOptions& options);

ReachResult output_range(const NetworkModel& net, const QuerySubspace& subspace,
                         std::size_t label, EvalTap tap, const ReachOptions& options);

enum class Verdict { Safe, Unsafe, Unknown };
std::string_view to_string(Verdict v);

struct SafetyVerdict {
  Verdict verdict = Verdict::Unknown;
  std::size_t base_label = 0;
  /// Certified upper bound on the margin max_{i != j} c_i - c_j.
  double sup_bound = 0.0;
  /// Largest margin actually observed.
  double sup_attained = 0.0;
  std::optional<Vector> witness;
  double error_band = 0.0;
  bool certified = false;
  std::size_t evaluations = 0;
  double wall_ms = 0.0;
  double objective_constant = 0.0;
};

/// Decides whether every input of the subspace keeps the base input's label.
SafetyVerdict verify_safety(const NetworkModel& net, const QuerySubspace& subspace, EvalTap tap,
                            const ReachOptions& options);

/// The tap the margin is read from when the caller does not choose:
/// logits whenever a trailing softmax exists.
EvalTap default_safety_tap(const NetworkModel& net);

enum class Ordering { FirstMoreRobust, SecondMoreRobust, Incomparable };
std::string_view to_string(Ordering o);

struct Comparison {
  ReachResult first;
  ReachResult second;
  Ordering ordering = Ordering::Incomparable;
  /// Diameters closer than this are not ordered.
  double indifference_band = 0.0;
};

Comparison compare_networks(const NetworkModel& f, const NetworkModel& g, const OutputFunction& o,
                            const QuerySubspace& subspace, EvalTap tap,
                            const ReachOptions& options);

Comparison compare_subspaces(const NetworkModel& net, const QuerySubspace& first,
                             const QuerySubspace& second, const OutputFunction& o, EvalTap tap,
                             const ReachOptions& options);

}  // namespace lipreach
