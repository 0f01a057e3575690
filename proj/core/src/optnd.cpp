#include "lipreach/optnd.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "lipreach/error.hpp"

namespace lipreach {

namespace {

void validate(const NestedProblem& p) {
  if (p.dims.empty()) throw DomainError("a nested problem needs at least one free dimension");
  if (!p.objective) throw DomainError("nested problem has no objective");
  if (!(p.epsilon_total > 0.0)) throw DomainError("epsilon_total must be positive");
  std::vector<std::size_t> seen;
  for (const auto& d : p.dims) {
    if (d.index >= static_cast<std::size_t>(p.fixed.size()))
      throw ShapeError("free dimension " + std::to_string(d.index) + " outside the input vector");
    if (!(d.lower < d.upper) || !std::isfinite(d.lower) || !std::isfinite(d.upper))
      throw DomainError("free dimension " + std::to_string(d.index) + " has empty bounds");
    seen.push_back(d.index);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw DomainError("free dimensions must be distinct");
}

double checked(const ObjectiveND& f, const Vector& x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "objective returned " << v << " at x = [";
    for (Eigen::Index i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
    msg << "]";
    throw EvaluationError(msg.str(), std::vector<double>(x.data(), x.data() + x.size()));
  }
  return v;
}

OptConfig level_config(const NestedProblem& p, double eps) {
  OptConfig cfg;
  cfg.epsilon = eps;
  cfg.max_iterations = p.max_iterations_per_level;
  cfg.lipschitz = p.budget;
  cfg.k_floor = p.k_floor;
  return cfg;
}

PointEstimate summarise(const SawtoothState& st) {
  if (st.degenerate()) return PointEstimate::exact(st.upper());
  return {st.upper(), std::min(st.certified_lower(), st.upper())};
}

// ---- strict nesting ----------------------------------------------------
//
// Evaluating level k at a point runs the complete level k+1 search.

class StrictSolver {
 public:
  StrictSolver(const NestedProblem& p, std::vector<double> eps)
      : p_(p), eps_(std::move(eps)), memo_(p.dims.size()), iterations_(p.dims.size(), 0) {}

  NdOutcome run() {
    Vector x = p_.fixed;
    const Result r = solve(0, x);
    NdOutcome out;
    out.lower = r.estimate.floor;
    out.upper = r.estimate.value;
    out.best_point = r.best;
    out.k_breach = breach_;
    out.decided = decided_;
    out.evaluations = evaluations_;
    out.per_level_iterations = iterations_;
    return out;
  }

 private:
  struct Result {
    PointEstimate estimate;
    Vector best;
  };

  bool stopped() const { return decided_ || evaluations_ >= p_.max_evaluations; }

  Result solve(std::size_t level, Vector& x) {
    std::vector<double> key;
    key.reserve(level);
    for (std::size_t j = 0; j < level; ++j) key.push_back(x[static_cast<Eigen::Index>(p_.dims[j].index)]);
    if (auto it = memo_[level].find(key); it != memo_[level].end()) return it->second;

    const FreeDim& dim = p_.dims[level];
    const auto idx = static_cast<Eigen::Index>(dim.index);
    const bool leaf = level + 1 == p_.dims.size();

    double best_value = 0.0;
    Vector best;
    auto eval = [&](double y) {
      x[idx] = y;
      PointEstimate est;
      Vector where;
      if (leaf) {
        est = PointEstimate::exact(checked(p_.objective, x));
        ++evaluations_;
        where = x;
        if (p_.decision_threshold && est.value < *p_.decision_threshold) decided_ = true;
      } else {
        Result r = solve(level + 1, x);
        est = r.estimate;
        where = std::move(r.best);
      }
      if (best.size() == 0 || est.value < best_value) {
        best_value = est.value;
        best = std::move(where);
      }
      return est;
    };

    const OptConfig cfg = level_config(p_, eps_[level]);
    const PointEstimate at_a = eval(dim.lower);
    const PointEstimate at_b = eval(dim.upper);
    SawtoothState st(dim.lower, dim.upper, at_a, at_b, cfg);
    if (st.degenerate() && cfg.lipschitz.mode == LipschitzMode::Dynamic && !stopped()) {
      const double probe = dim.lower + kProbeFraction * (dim.upper - dim.lower);
      st.insert({0, probe, false}, eval(probe));
    }
    while (!st.converged() && st.iteration() < cfg.max_iterations && !stopped()) {
      if (level == 0 && p_.decision_threshold && summarise(st).floor >= *p_.decision_threshold) {
        decided_ = true;
        break;
      }
      const auto prop = st.propose();
      st.insert(prop, eval(prop.point));
    }
    breach_ = breach_ || st.k_breached();
    iterations_[level] += st.iteration();

    Result r{summarise(st), std::move(best)};
    if (!stopped()) memo_[level].emplace(std::move(key), r);
    return r;
  }

  const NestedProblem& p_;
  std::vector<double> eps_;
  std::vector<std::map<std::vector<double>, Result>> memo_;
  std::vector<std::size_t> iterations_;
  std::size_t evaluations_ = 0;
  bool breach_ = false;
  bool decided_ = false;
};

// ---- adaptive scheduling ------------------------------------------------
//
// Every univariate subproblem ever spawned stays in a pool. Each step
// advances the one with the largest characteristic by a single split and
// pushes the refined estimate up through its ancestors.

class AdaptiveSolver {
 public:
  AdaptiveSolver(const NestedProblem& p, std::vector<double> eps)
      : p_(p), eps_(std::move(eps)), eps_sum_(std::accumulate(eps_.begin(), eps_.end(), 0.0)) {}

  NdOutcome run() {
    Vector x = p_.fixed;
    const std::size_t root = spawn(0, x, kNoParent, 0.0);
    while (!pool_.empty() && evaluations_ < p_.max_evaluations && !decided_) {
      const Node& r = *nodes_[root];
      const PointEstimate est = summarise(*r.state);
      if (est.value - est.floor <= eps_sum_) break;
      if (p_.decision_threshold && est.floor >= *p_.decision_threshold) {
        decided_ = true;
        break;
      }
      const std::size_t id = std::get<2>(*pool_.begin());
      advance(id);
    }

    const Node& r = *nodes_[root];
    const PointEstimate est = summarise(*r.state);
    NdOutcome out;
    out.lower = est.floor;
    out.upper = est.value;
    out.best_point = r.best;
    out.decided = decided_;
    out.evaluations = evaluations_;
    out.per_level_iterations.assign(p_.dims.size(), 0);
    for (const auto& n : nodes_) {
      out.per_level_iterations[n->level] += n->state->iteration();
      out.k_breach = out.k_breach || n->state->k_breached();
    }
    return out;
  }

 private:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  struct Node {
    std::size_t level = 0;
    std::size_t parent = kNoParent;
    double abscissa = 0.0;  // position inside the parent's search
    Vector x;               // coordinates of levels < `level` are fixed
    std::unique_ptr<SawtoothState> state;
    std::vector<std::size_t> children;  // aligned with state->points()
    Vector best;
    double best_value = INFINITY;
    bool queued = false;
    std::tuple<double, std::size_t, std::size_t> key;
  };

  // Evaluates level `level` at abscissa y; returns the estimate, the
  // spawned child (or kNoParent at the leaf level) and the witness.
  std::tuple<PointEstimate, std::size_t, Vector> sample(std::size_t level, Vector& x, double y,
                                                         std::size_t owner) {
    x[static_cast<Eigen::Index>(p_.dims[level].index)] = y;
    if (level + 1 == p_.dims.size()) {
      const double v = checked(p_.objective, x);
      ++evaluations_;
      if (p_.decision_threshold && v < *p_.decision_threshold) decided_ = true;
      return {PointEstimate::exact(v), kNoParent, x};
    }
    const std::size_t child = spawn(level + 1, x, owner, y);
    const Node& c = *nodes_[child];
    return {summarise(*c.state), child, c.best};
  }

  std::size_t spawn(std::size_t level, const Vector& x, std::size_t parent, double abscissa) {
    const std::size_t id = nodes_.size();
    nodes_.push_back(std::make_unique<Node>());
    {
      Node& n = *nodes_[id];
      n.level = level;
      n.parent = parent;
      n.abscissa = abscissa;
      n.x = x;
    }
    const FreeDim& dim = p_.dims[level];
    Vector work = x;
    auto [at_a, child_a, best_a] = sample(level, work, dim.lower, id);
    auto [at_b, child_b, best_b] = sample(level, work, dim.upper, id);

    Node& n = *nodes_[id];
    n.state = std::make_unique<SawtoothState>(dim.lower, dim.upper, at_a, at_b,
                                              level_config(p_, eps_[level]));
    n.children = {child_a, child_b};
    if (at_b.value < at_a.value) {
      n.best_value = at_b.value;
      n.best = std::move(best_b);
    } else {
      n.best_value = at_a.value;
      n.best = std::move(best_a);
    }
    if (n.state->degenerate() && p_.budget.mode == LipschitzMode::Dynamic) advance_state(id);
    requeue(id);
    return id;
  }

  void advance_state(std::size_t id) {
    SawtoothState::Proposal prop{0, 0.0, false};
    {
      Node& n = *nodes_[id];
      if (n.state->degenerate()) {
        const auto pts = n.state->points();
        prop = {0, pts[0] + kProbeFraction * (pts[1] - pts[0]), false};
      } else {
        prop = n.state->propose();
      }
    }
    Vector work = nodes_[id]->x;
    auto [est, child, where] = sample(nodes_[id]->level, work, prop.point, id);
    Node& n = *nodes_[id];
    n.state->insert(prop, est);
    n.children.insert(n.children.begin() + static_cast<std::ptrdiff_t>(prop.interval + 1), child);
    if (est.value < n.best_value) {
      n.best_value = est.value;
      n.best = std::move(where);
    }
  }

  void advance(std::size_t id) {
    advance_state(id);
    requeue(id);
    propagate(id);
  }

  void propagate(std::size_t id) {
    while (nodes_[id]->parent != kNoParent) {
      const std::size_t parent = nodes_[id]->parent;
      const Node& child = *nodes_[id];
      Node& up = *nodes_[parent];
      const std::size_t at = up.state->locate(child.abscissa);
      const PointEstimate est = summarise(*child.state);
      up.state->refresh(at, est);
      if (est.value < up.best_value) {
        up.best_value = est.value;
        up.best = child.best;
      }
      requeue(parent);
      id = parent;
    }
  }

  void requeue(std::size_t id) {
    Node& n = *nodes_[id];
    if (n.queued) pool_.erase(n.key);
    const double c = characteristic(*n.state);
    n.queued = c > 0.0;
    if (n.queued) {
      n.key = {-c, n.level, id};
      pool_.insert(n.key);
    }
  }

  const NestedProblem& p_;
  std::vector<double> eps_;
  double eps_sum_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::set<std::tuple<double, std::size_t, std::size_t>> pool_;
  std::size_t evaluations_ = 0;
  bool decided_ = false;
};

}  // namespace

std::string_view to_string(NestedMode m) {
  return m == NestedMode::StrictNested ? "strict" : "adaptive";
}

NestedMode nested_mode_from_string(std::string_view s) {
  if (s == "strict" || s == "strict_nested") return NestedMode::StrictNested;
  if (s == "adaptive") return NestedMode::Adaptive;
  throw DomainError("unknown nested mode \"" + std::string(s) + "\"");
}

double characteristic(const SawtoothState& sub) {
  if (sub.converged()) return 0.0;
  return std::max(0.0, sub.upper() - sub.lower());
}

std::vector<double> resolve_level_eps(const NestedProblem& problem) {
  const std::size_t n = problem.dims.size();
  if (problem.per_level_eps.empty()) return std::vector<double>(n, problem.epsilon_total / static_cast<double>(n));
  if (problem.per_level_eps.size() != n)
    throw DomainError("per_level_eps needs one entry per free dimension");
  double sum = 0.0;
  for (double e : problem.per_level_eps) {
    if (!(e > 0.0)) throw DomainError("per-level tolerances must be positive");
    sum += e;
  }
  if (sum > problem.epsilon_total * (1.0 + 1e-12))
    throw DomainError("per-level tolerances exceed epsilon_total");
  return problem.per_level_eps;
}

NdOutcome minimize_nd(const NestedProblem& problem, NestedMode mode) {
  validate(problem);
  auto eps = resolve_level_eps(problem);
  const double eps_sum = std::accumulate(eps.begin(), eps.end(), 0.0);
  NdOutcome out = mode == NestedMode::StrictNested ? StrictSolver(problem, std::move(eps)).run()
                                                   : AdaptiveSolver(problem, std::move(eps)).run();
  out.converged = out.upper - out.lower <= eps_sum * (1.0 + 1e-12);
  out.certified = out.converged && !out.k_breach && problem.budget.mode == LipschitzMode::Static;
  return out;
}

NdOutcome maximize_nd(const NestedProblem& problem, NestedMode mode) {
  NestedProblem negated = problem;
  negated.objective = [f = problem.objective](const Vector& x) { return -f(x); };
  if (problem.decision_threshold) negated.decision_threshold = -*problem.decision_threshold;
  NdOutcome out = minimize_nd(negated, mode);
  const double lo = -out.upper;
  const double hi = -out.lower;
  out.lower = lo;
  out.upper = hi;
  return out;
}

}  // namespace lipreach
