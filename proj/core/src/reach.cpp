#include "lipreach/reach.hpp"

#include <chrono>
#include <cmath>
#include <future>

#include "lipreach/error.hpp"

namespace lipreach {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

NestedProblem make_problem(const NetworkModel& net, const QuerySubspace& subspace,
                           const OutputFunction& o, EvalTap tap, const ReachOptions& options,
                           double objective_constant) {
  NestedProblem p;
  p.dims = subspace.as_free_dims();
  p.fixed = subspace.base;
  p.objective = [&net, o, tap](const Vector& x) { return o(net.forward(x, tap)); };
  p.budget = options.mode == LipschitzMode::Static ? LipschitzBudget::fixed(objective_constant)
                                                   : LipschitzBudget::dynamic(options.eta);
  p.epsilon_total = options.epsilon;
  p.max_evaluations = options.max_evaluations;
  return p;
}

void check_options(const ReachOptions& options) {
  if (!(options.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (options.mode == LipschitzMode::Dynamic && !(options.eta > 1.0))
    throw DomainError("eta must be > 1");
}

std::size_t unique_argmax(const Vector& c) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < c.size(); ++i)
    if (c[i] > c[best]) best = i;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (i != best && c[i] == c[best])
      throw DomainError("base input has tied top labels " + std::to_string(best) + " and " +
                        std::to_string(i));
  return static_cast<std::size_t>(best);
}

Ordering order(double first, double second, double band) {
  if (std::abs(first - second) <= band) return Ordering::Incomparable;
  return first < second ? Ordering::FirstMoreRobust : Ordering::SecondMoreRobust;
}

}  // namespace

double OutputFunction::operator()(const Vector& c) const {
  const auto j = static_cast<Eigen::Index>(label_);
  switch (kind_) {
    case Kind::Project:
      return c[j];
    case Kind::Margin: {
      double best = -INFINITY;
      for (Eigen::Index i = 0; i < c.size(); ++i)
        if (i != j) best = std::max(best, c[i] - c[j]);
      return best;
    }
    case Kind::MaxOutput:
      return c.maxCoeff();
  }
  return 0.0;
}

double OutputFunction::lipschitz() const noexcept {
  // |(c_i - c_j) - (c'_i - c'_j)| <= sqrt(2) |c - c'|
  return kind_ == Kind::Margin ? std::sqrt(2.0) : 1.0;
}

void OutputFunction::check_width(std::size_t width) const {
  if (kind_ == Kind::MaxOutput) return;
  if (label_ >= width)
    throw ShapeError("label " + std::to_string(label_) + " outside output width " +
                     std::to_string(width));
  if (kind_ == Kind::Margin && width < 2) throw ShapeError("margin needs at least two outputs");
}

std::string_view to_string(OutputFunction::Kind k) {
  switch (k) {
    case OutputFunction::Kind::Project:
      return "project";
    case OutputFunction::Kind::Margin:
      return "margin";
    case OutputFunction::Kind::MaxOutput:
      return "max-of-outputs";
  }
  return "project";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Safe:
      return "safe";
    case Verdict::Unsafe:
      return "unsafe";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::FirstMoreRobust:
      return "first_more_robust";
    case Ordering::SecondMoreRobust:
      return "second_more_robust";
    case Ordering::Incomparable:
      return "incomparable";
  }
  return "incomparable";
}

ReachResult reachability(const NetworkModel& net, const QuerySubspace& subspace,
                         const OutputFunction& o, EvalTap tap, const ReachOptions& options) {
  check_options(options);
  validate_subspace(subspace, net);
  o.check_width(net.output_width(tap));
  const auto start = Clock::now();

  ReachResult r;
  r.network_budget = network_constant(net, tap);
  r.network_budget.mode = options.mode;
  r.network_budget.eta = options.eta;
  r.objective_constant = o.lipschitz() * r.network_budget.network_constant;
  r.epsilon = options.epsilon;

  const NestedProblem problem = make_problem(net, subspace, o, tap, options, r.objective_constant);
  NdOutcome lo;
  NdOutcome hi;
  if (options.threads > 1) {
    auto upper = std::async(std::launch::async, [&] { return maximize_nd(problem, options.nested); });
    lo = minimize_nd(problem, options.nested);
    hi = upper.get();
  } else {
    lo = minimize_nd(problem, options.nested);
    hi = maximize_nd(problem, options.nested);
  }

  r.lower = lo.lower;
  r.upper = hi.upper;
  r.diameter = r.upper - r.lower;
  r.min_witness = lo.best_point;
  r.max_witness = hi.best_point;
  r.min_attained = lo.upper;
  r.max_attained = hi.lower;
  r.converged = lo.converged && hi.converged;
  r.certified = lo.certified && hi.certified;
  r.evaluations = lo.evaluations + hi.evaluations;
  r.wall_ms = elapsed_ms(start);
  return r;
}

ReachResult output_range(const NetworkModel& net, const QuerySubspace& subspace,
                         std::size_t label, EvalTap tap, const ReachOptions& options) {
  return reachability(net, subspace, OutputFunction::project(label), tap, options);
}

EvalTap default_safety_tap(const NetworkModel& net) {
  return net.ends_in_softmax() ? EvalTap::Logit : EvalTap::Output;
}

SafetyVerdict verify_safety(const NetworkModel& net, const QuerySubspace& subspace, EvalTap tap,
                            const ReachOptions& options) {
  check_options(options);
  validate_subspace(subspace, net);
  if (!subspace.contains(subspace.base))
    throw DomainError("base input lies outside the query subspace");
  const auto start = Clock::now();

  SafetyVerdict v;
  v.base_label = unique_argmax(net.forward(subspace.base, tap));
  const OutputFunction margin = OutputFunction::margin(v.base_label);
  margin.check_width(net.output_width(tap));
  v.objective_constant = margin.lipschitz() * network_constant(net, tap).network_constant;
  v.error_band = 2.0 * options.epsilon;

  NestedProblem problem = make_problem(net, subspace, margin, tap, options, v.objective_constant);
  problem.decision_threshold = 0.0;
  const NdOutcome hi = maximize_nd(problem, options.nested);

  v.sup_bound = hi.upper;
  v.sup_attained = hi.lower;
  v.evaluations = hi.evaluations;
  if (v.sup_attained > 0.0) {
    v.verdict = Verdict::Unsafe;
    v.witness = hi.best_point;
    v.certified = true;  // the witness is checked by evaluation, not by K
  } else if (v.sup_bound <= 0.0) {
    v.verdict = Verdict::Safe;
    v.certified = !hi.k_breach && options.mode == LipschitzMode::Static;
  } else {
    v.verdict = Verdict::Unknown;
  }
  v.wall_ms = elapsed_ms(start);
  return v;
}

Comparison compare_networks(const NetworkModel& f, const NetworkModel& g, const OutputFunction& o,
                            const QuerySubspace& subspace, EvalTap tap,
                            const ReachOptions& options) {
  if (f.input_dim() != g.input_dim() || f.output_width(tap) != g.output_width(tap))
    throw ShapeError("networks are not homogeneous: input or output widths differ");
  Comparison c;
  c.first = reachability(f, subspace, o, tap, options);
  c.second = reachability(g, subspace, o, tap, options);
  c.indifference_band = 2.0 * options.epsilon;
  c.ordering = order(c.first.diameter, c.second.diameter, c.indifference_band);
  return c;
}

Comparison compare_subspaces(const NetworkModel& net, const QuerySubspace& first,
                             const QuerySubspace& second, const OutputFunction& o, EvalTap tap,
                             const ReachOptions& options) {
  Comparison c;
  c.first = reachability(net, first, o, tap, options);
  c.second = reachability(net, second, o, tap, options);
  c.indifference_band = 2.0 * options.epsilon;
  c.ordering = order(c.first.diameter, c.second.diameter, c.indifference_band);
  return c;
}

}  // namespace lipreach
