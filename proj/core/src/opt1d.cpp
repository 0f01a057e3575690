#include "lipreach/opt1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lipreach/error.hpp"

namespace lipreach {

namespace {

// Fraction of the interval width kept free on either side when a split
// point has to be clamped back inside.
constexpr double kClampMargin = 1e-6;

void require_interval(double y_left, double y_right) {
  if (!(y_left < y_right))
    throw DomainError("degenerate interval [" + std::to_string(y_left) + ", " +
                      std::to_string(y_right) + "]");
}

std::size_t leftmost_min(const std::vector<double>& z) {
  return static_cast<std::size_t>(std::min_element(z.begin(), z.end()) - z.begin());
}

}  // namespace

NewPoint new_point(double y_left, double y_right, double w_left, double w_right, double k) {
  require_interval(y_left, y_right);
  if (!(k > 0.0)) throw DomainError("new_point needs a positive Lipschitz constant");
  const double raw = 0.5 * (y_left + y_right) - (w_right - w_left) / (2.0 * k);
  if (raw > y_left && raw < y_right) return {raw, false};
  const double margin = kClampMargin * (y_right - y_left);
  return {std::clamp(raw, y_left + margin, y_right - margin), true};
}

double interval_min(double y_left, double y_right, double w_left, double w_right, double k) {
  require_interval(y_left, y_right);
  return 0.5 * (w_left + w_right) - 0.5 * k * (y_right - y_left);
}

SawtoothState::SawtoothState(double a, double b, PointEstimate at_a, PointEstimate at_b,
                             const OptConfig& cfg)
    : points_{a, b},
      values_{at_a.value, at_b.value},
      floors_{at_a.floor, at_b.floor},
      z_(1),
      zc_(1),
      budget_(cfg.lipschitz),
      epsilon_(cfg.epsilon),
      k_floor_(cfg.k_floor) {
  require_interval(a, b);
  if (!(cfg.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (cfg.max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  if (budget_.mode == LipschitzMode::Dynamic && !(budget_.eta > 1.0))
    throw DomainError("eta must be > 1");
  update_dynamic();
  recompute_all();
  refresh_bounds();
  lower_history_.push_back(lower_);
  upper_history_.push_back(upper());
}

bool SawtoothState::update_dynamic() {
  if (budget_.mode != LipschitzMode::Dynamic) return false;
  std::vector<SlopeSample> samples(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) samples[i] = {points_[i], values_[i]};
  const double before = budget_.current_dynamic;
  budget_ = dynamic_update(std::move(budget_), samples);
  return budget_.current_dynamic != before;
}

void SawtoothState::recompute_interval(std::size_t i) {
  const double k = budget_.active();
  z_[i] = interval_min(points_[i], points_[i + 1], values_[i], values_[i + 1], k);
  zc_[i] = interval_min(points_[i], points_[i + 1], floors_[i], floors_[i + 1], k);
}

void SawtoothState::recompute_all() {
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) recompute_interval(i);
}

bool SawtoothState::brackets_conflict(std::size_t i) const {
  // True values lie in [floor, value]; a breach needs the brackets themselves
  // to be further apart than K allows.
  const double reach = budget_.active() * (points_[i + 1] - points_[i]);
  const double gap = std::max(floors_[i + 1] - values_[i], floors_[i] - values_[i + 1]);
  const double tol = 1e-12 * (1.0 + std::abs(values_[i]) + std::abs(values_[i + 1]));
  return gap > reach + tol;
}

void SawtoothState::refresh_bounds() {
  lower_ = *std::min_element(z_.begin(), z_.end());
  certified_lower_ = *std::min_element(zc_.begin(), zc_.end());
  best_ = static_cast<std::size_t>(std::min_element(values_.begin(), values_.end()) - values_.begin());
}

SawtoothState::Proposal SawtoothState::propose() {
  std::size_t i = leftmost_min(z_);
  if (degenerate()) return {i, 0.5 * (points_[i] + points_[i + 1]), false};

  auto raw = [&] {
    return new_point(points_[i], points_[i + 1], values_[i], values_[i + 1], budget_.active());
  };
  NewPoint np = raw();
  if (np.clamped && budget_.mode == LipschitzMode::Dynamic) {
    budget_.current_dynamic *= budget_.eta;
    recompute_all();
    refresh_bounds();
    i = leftmost_min(z_);
    np = raw();
  }
  if (np.clamped && brackets_conflict(i)) k_breach_ = true;
  return {i, np.point, np.clamped};
}

IterationRecord SawtoothState::insert(const Proposal& p, PointEstimate estimate) {
  if (!std::isfinite(estimate.value) || !std::isfinite(estimate.floor))
    throw DomainError("sawtooth estimates must be finite");
  if (p.interval + 1 >= points_.size()) throw DomainError("proposal refers to a missing interval");
  const std::size_t i = p.interval;
  if (!(p.point > points_[i] && p.point < points_[i + 1]))
    throw DomainError("split point is not strictly inside its interval");

  IterationRecord rec;
  rec.interval = i;
  rec.point = p.point;
  rec.value = estimate.value;
  rec.z_star = z_[i];
  rec.lower_before = lower_;
  rec.upper_before = upper();
  rec.clamped = p.clamped;
  rec.unique_minimum = std::count(z_.begin(), z_.end(), z_[i]) == 1;

  const auto at = static_cast<std::ptrdiff_t>(i + 1);
  points_.insert(points_.begin() + at, p.point);
  values_.insert(values_.begin() + at, estimate.value);
  floors_.insert(floors_.begin() + at, estimate.floor);
  z_.insert(z_.begin() + at, 0.0);
  zc_.insert(zc_.begin() + at, 0.0);

  if (update_dynamic()) {
    recompute_all();
  } else {
    recompute_interval(i);
    recompute_interval(i + 1);
  }
  if (budget_.mode == LipschitzMode::Static && (brackets_conflict(i) || brackets_conflict(i + 1)))
    k_breach_ = true;

  ++iteration_;
  refresh_bounds();
  lower_history_.push_back(lower_);
  upper_history_.push_back(upper());

  rec.iteration = iteration_;
  rec.z_left = z_[i];
  rec.z_right = z_[i + 1];
  rec.lower_after = lower_;
  rec.upper_after = upper();
  rec.k = budget_.active();
  return rec;
}

void SawtoothState::refresh(std::size_t index, PointEstimate estimate) {
  if (index >= points_.size()) throw DomainError("refresh index out of range");
  if (!std::isfinite(estimate.value) || !std::isfinite(estimate.floor))
    throw DomainError("sawtooth estimates must be finite");
  values_[index] = estimate.value;
  floors_[index] = estimate.floor;
  if (update_dynamic()) {
    recompute_all();
  } else {
    if (index > 0) recompute_interval(index - 1);
    if (index + 1 < points_.size()) recompute_interval(index);
  }
  refresh_bounds();
}

std::size_t SawtoothState::locate(double y) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), y);
  if (it == points_.end() || *it != y) throw DomainError("abscissa is not a sample point");
  return static_cast<std::size_t>(it - points_.begin());
}

OptOutcome minimize_1d(const Objective1D& objective, double a, double b, const OptConfig& cfg,
                       const IterationObserver& observer) {
  require_interval(a, b);
  std::size_t evaluations = 0;
  auto eval = [&](double y) {
    const double v = objective(y);
    ++evaluations;
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "objective returned " << v << " at x = " << y;
      throw EvaluationError(msg.str(), {y});
    }
    return PointEstimate::exact(v);
  };

  const PointEstimate wa = eval(a);
  const PointEstimate wb = eval(b);
  SawtoothState st(a, b, wa, wb, cfg);

  // Equal endpoint values give a zero initial slope estimate; one probe
  // tells a flat objective from one that merely repeats its endpoint value.
  if (st.degenerate() && cfg.lipschitz.mode == LipschitzMode::Dynamic) {
    const double probe = a + kProbeFraction * (b - a);
    const auto rec = st.insert({0, probe, false}, eval(probe));
    if (observer) observer(rec);
  }

  std::size_t rounds = 0;
  std::vector<double> round_lower{st.lower()};
  std::vector<double> round_upper{st.upper()};
  while (!st.converged() && st.iteration() < cfg.max_iterations) {
    // A round splits every interval tied at min Z, leftmost first; L can
    // only rise once the last of them is split.
    const double level = st.lower();
    ++rounds;
    do {
      const auto p = st.propose();
      auto rec = st.insert(p, eval(p.point));
      rec.round = rounds;
      if (observer) observer(rec);
    } while (st.lower() == level && !st.degenerate() && st.iteration() < cfg.max_iterations);
    round_lower.push_back(st.lower());
    round_upper.push_back(st.upper());
  }

  OptOutcome out;
  out.upper = st.upper();
  out.lower = st.degenerate() ? st.upper() : st.lower();
  out.best_point = st.best_point();
  out.converged = st.converged();
  out.k_breach = st.k_breached();
  out.certified = out.converged && !out.k_breach && cfg.lipschitz.mode == LipschitzMode::Static;
  out.iterations = st.iteration();
  out.evaluations = evaluations;
  out.rounds = rounds;
  out.lower_history = st.lower_history();
  out.upper_history = st.upper_history();
  out.round_lower_history = std::move(round_lower);
  out.round_upper_history = std::move(round_upper);
  return out;
}

}  // namespace lipreach
