#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lipreach/lipschitz.hpp"

namespace lipreach {

/// Where dynamic mode samples once when both endpoints agree. Off-centre so
/// that objectives symmetric about the midpoint are not mistaken for flat.
inline constexpr double kProbeFraction = 0.3819660112501051;

struct OptConfig {
  double epsilon = 1e-3;
  std::size_t max_iterations = 1'000'000;
  LipschitzBudget lipschitz = LipschitzBudget::fixed(1.0);
  /// Constants below this are treated as "the objective is constant".
  double k_floor = 1e-12;
};

/// Candidate abscissa for splitting [y_left, y_right]. `clamped` is set when
/// the raw formula left the open interval, a symptom of K being too small.
struct NewPoint {
  double point;
  bool clamped;
};

/// Minimiser of the two-point sawtooth on [y_left, y_right]:
///   (y_left + y_right) / 2 - (w_right - w_left) / (2K)
NewPoint new_point(double y_left, double y_right, double w_left, double w_right, double k);

/// Minimum of the two-point sawtooth on [y_left, y_right]:
///   (w_left + w_right) / 2 - K (y_right - y_left) / 2
double interval_min(double y_left, double y_right, double w_left, double w_right, double k);

/// What is known about the objective at a sampled abscissa. For a direct
/// evaluation both fields are equal. When the value itself comes from an
/// inner optimisation, `value` is attained and `floor` is a certified lower
/// bound on the exact value.
struct PointEstimate {
  double value;
  double floor;

  static PointEstimate exact(double v) { return {v, v}; }
};

/// Everything observable about one split.
struct IterationRecord {
  std::size_t iteration = 0;
  std::size_t interval = 0;
  double point = 0.0;
  double value = 0.0;
  double z_star = 0.0;
  double z_left = 0.0;
  double z_right = 0.0;
  double lower_before = 0.0;
  double upper_before = 0.0;
  double lower_after = 0.0;
  double upper_after = 0.0;
  double k = 0.0;
  bool clamped = false;
  /// The split interval was the only one attaining min Z.
  bool unique_minimum = true;
  /// Round of minimize_1d this split belongs to (0 outside it).
  std::size_t round = 0;
};

/// Evolving state of the sawtooth lower-bound search on [a, b].
///
/// `points` stay sorted with points.front() == a and points.back() == b;
/// there is one interval minimum z per pair of neighbours. `lower()` is
/// min Z over the attained values, `certified_lower()` the same computed
/// from the floors. Both coincide for direct evaluations.
class SawtoothState {
 public:
  struct Proposal {
    std::size_t interval;
    double point;
    bool clamped;
  };

  SawtoothState(double a, double b, PointEstimate at_a, PointEstimate at_b, const OptConfig& cfg);

  /// Picks the leftmost interval attaining min Z and the split point inside it.
  /// In dynamic mode an out-of-interval point inflates K by eta once first.
  Proposal propose();

  /// Inserts the evaluated proposal and splits its interval.
  IterationRecord insert(const Proposal& p, PointEstimate estimate);

  /// Replaces the estimate at points()[index] (inner optimisation refined it).
  void refresh(std::size_t index, PointEstimate estimate);

  /// Index of the sample at abscissa y, which must exist.
  std::size_t locate(double y) const;

  std::span<const double> points() const noexcept { return points_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> floors() const noexcept { return floors_; }
  std::span<const double> interval_mins() const noexcept { return z_; }

  double lower() const noexcept { return lower_; }
  double certified_lower() const noexcept { return certified_lower_; }
  double upper() const noexcept { return values_[best_]; }
  std::size_t best_index() const noexcept { return best_; }
  double best_point() const noexcept { return points_[best_]; }
  std::size_t iteration() const noexcept { return iteration_; }
  double k() const noexcept { return budget_.active(); }
  const LipschitzBudget& budget() const noexcept { return budget_; }
  double epsilon() const noexcept { return epsilon_; }

  /// K fell below the floor: the objective is treated as constant.
  bool degenerate() const noexcept { return k() < k_floor_; }
  bool converged() const noexcept { return degenerate() || upper() - lower() <= epsilon_; }
  bool k_breached() const noexcept { return k_breach_; }

  const std::vector<double>& lower_history() const noexcept { return lower_history_; }
  const std::vector<double>& upper_history() const noexcept { return upper_history_; }

 private:
  void recompute_interval(std::size_t i);
  void recompute_all();
  void refresh_bounds();
  bool update_dynamic();
  /// No K-Lipschitz function fits the samples at points i and i + 1.
  bool brackets_conflict(std::size_t i) const;

  std::vector<double> points_;
  std::vector<double> values_;
  std::vector<double> floors_;
  std::vector<double> z_;
  std::vector<double> zc_;
  double lower_ = 0.0;
  double certified_lower_ = 0.0;
  std::size_t best_ = 0;
  std::size_t iteration_ = 0;
  LipschitzBudget budget_;
  double epsilon_;
  double k_floor_;
  bool k_breach_ = false;
  std::vector<double> lower_history_;
  std::vector<double> upper_history_;
};

struct OptOutcome {
  double lower = 0.0;
  double upper = 0.0;
  double best_point = 0.0;
  bool converged = false;
  /// Static constant, converged, and no K breach observed.
  bool certified = false;
  bool k_breach = false;
  /// Splits performed.
  std::size_t iterations = 0;
  /// Rounds performed; a round splits every interval attaining min Z.
  std::size_t rounds = 0;
  std::size_t evaluations = 0;
  /// Bounds after each split, starting with the two endpoints.
  std::vector<double> lower_history;
  std::vector<double> upper_history;
  /// Bounds after each round, starting with the two endpoints.
  std::vector<double> round_lower_history;
  std::vector<double> round_upper_history;
};

using Objective1D = std::function<double(double)>;
using IterationObserver = std::function<void(const IterationRecord&)>;

/// Global minimisation of a Lipschitz objective over [a, b]. Convergence is
/// checked between rounds.
OptOutcome minimize_1d(const Objective1D& objective, double a, double b, const OptConfig& cfg,
                       const IterationObserver& observer = {});

}  // namespace lipreach
