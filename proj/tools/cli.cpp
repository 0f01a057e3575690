#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lipreach/error.hpp"
#include "lipreach/lipschitz.hpp"
#include "lipreach/model.hpp"
#include "lipreach/oracle.hpp"
#include "lipreach/query.hpp"
#include "lipreach/reach.hpp"
#include "lipreach/satgen.hpp"
#include "lipreach/synthetic.hpp"

#ifndef LIPREACH_VERSION
#define LIPREACH_VERSION "0.0.0"
#endif

namespace lipreach::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr double kDefaultRangeEps = 0.01;
constexpr double kDefaultSafetyEps = 0.05;

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json vec(const Vector& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

Json vec(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

/// Flags shared by the query-driven commands.
struct QueryFlags {
  std::string query;
  std::string model;
  double epsilon = 0.0;
  std::string mode;
  double eta = kDefaultEta;
  std::string tap;
  std::string nested;
  std::size_t threads = 1;
  bool csv = false;
  bool timing = false;

  CLI::Option* epsilon_opt = nullptr;
  CLI::Option* eta_opt = nullptr;
};

void add_query_flags(CLI::App* cmd, QueryFlags& f, bool needs_query = true) {
  auto* q = cmd->add_option("--query,-q", f.query, "Query JSON file");
  if (needs_query) q->required();
  cmd->add_option("--model,-m", f.model, "Model JSON file (overrides the query's model)");
  f.epsilon_opt = cmd->add_option("--epsilon,-e", f.epsilon, "Total error tolerance");
  cmd->add_option("--mode", f.mode, "Lipschitz mode")->check(CLI::IsMember({"static", "dynamic"}));
  f.eta_opt = cmd->add_option("--eta", f.eta, "Inflation factor for dynamic mode (> 1)");
  cmd->add_option("--tap", f.tap, "Read the network at its output or its logits")
      ->check(CLI::IsMember({"output", "logit"}));
  cmd->add_option("--nested", f.nested, "Nested scheme")->check(CLI::IsMember({"strict", "adaptive"}));
  cmd->add_option("--threads,-j", f.threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* csv = cmd->add_flag("--csv", f.csv, "Print a CSV table");
  cmd->add_flag("--json", "Print a JSON report (default)")->excludes(csv);
  cmd->add_flag("--timing", f.timing, "Include wall-clock time in the report");
}

/// Query file merged with command-line overrides.
struct Resolved {
  Query query;
  std::unique_ptr<NetworkModel> net;
  std::unique_ptr<NetworkModel> net_b;
  ReachOptions options;
  EvalTap tap = EvalTap::Output;
};

Resolved resolve(const QueryFlags& f, std::optional<QueryKind> force_kind) {
  Resolved r;
  r.query = load_query_file(f.query);
  if (force_kind) r.query.kind = *force_kind;
  const QueryKind kind = r.query.kind;
  if (!f.model.empty()) r.query.model = f.model;
  r.net = std::make_unique<NetworkModel>(load_model_file(r.query.model));
  if (r.query.model_b) r.net_b = std::make_unique<NetworkModel>(load_model_file(*r.query.model_b));

  auto& o = r.options;
  const double default_eps = kind == QueryKind::Safety ? kDefaultSafetyEps : kDefaultRangeEps;
  o.epsilon = f.epsilon_opt->count() ? f.epsilon : r.query.epsilon.value_or(default_eps);
  if (!(o.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  o.mode = !f.mode.empty() ? lipschitz_mode_from_string(f.mode) : r.query.mode.value_or(LipschitzMode::Static);
  o.eta = f.eta_opt->count() ? f.eta : r.query.eta.value_or(kDefaultEta);
  o.nested = !f.nested.empty() ? nested_mode_from_string(f.nested) : r.query.nested.value_or(NestedMode::Adaptive);
  o.threads = f.threads;

  const EvalTap fallback = kind == QueryKind::Safety ? default_safety_tap(*r.net) : EvalTap::Output;
  r.tap = !f.tap.empty() ? tap_from_string(f.tap) : r.query.tap.value_or(fallback);
  return r;
}

Json subspace_json(const SubspaceSpec& s) {
  Json bounds = Json::array();
  for (const auto& [a, b] : s.bounds) bounds.push_back({num(a), num(b)});
  return {{"base", vec(s.base)}, {"free_dims", s.free_dims}, {"bounds", bounds}};
}

Json echo(const Resolved& r, const std::string& o_spec) {
  Json q;
  q["query"] = to_string(r.query.kind);
  q["model"] = r.query.model.string();
  if (r.query.model_b) q["model_b"] = r.query.model_b->string();
  const Json box = subspace_json(r.query.subspace);
  for (const auto& [k, v] : box.items()) q[k] = v;
  if (r.query.subspace_b) {
    const Json box_b = subspace_json(*r.query.subspace_b);
    for (const auto& [k, v] : box_b.items()) q[k + "_b"] = v;
  }
  if (r.query.label) q["label"] = *r.query.label;
  q["o_spec"] = o_spec;
  q["tap"] = to_string(r.tap);
  q["epsilon"] = num(r.options.epsilon);
  q["mode"] = to_string(r.options.mode);
  if (r.options.mode == LipschitzMode::Dynamic) q["eta"] = num(r.options.eta);
  q["nested_mode"] = to_string(r.options.nested);
  return q;
}

Json budget_json(const LipschitzBudget& b, double objective_constant, LipschitzMode mode) {
  Json j;
  j["mode"] = to_string(mode);
  j["per_layer"] = vec(b.per_layer);
  j["network_constant"] = num(b.network_constant);
  j["objective_constant"] = num(objective_constant);
  if (mode == LipschitzMode::Dynamic) {
    j["eta"] = num(b.eta);
    j["note"] = "dynamic constants are estimated from samples; bounds are not certified";
  }
  return j;
}

Json range_json(const ReachResult& r, bool timing) {
  Json j;
  j["lower"] = num(r.lower);
  j["upper"] = num(r.upper);
  j["diameter"] = num(r.diameter);
  j["min_attained"] = num(r.min_attained);
  j["max_attained"] = num(r.max_attained);
  j["min_witness"] = vec(r.min_witness);
  j["max_witness"] = vec(r.max_witness);
  j["epsilon"] = num(r.epsilon);
  j["converged"] = r.converged;
  j["certified"] = r.certified;
  j["evaluations"] = r.evaluations;
  if (timing) j["wall_ms"] = num(r.wall_ms);
  return j;
}

Json envelope(const std::string& command) {
  Json j;
  j["tool"] = "lipreach";
  j["version"] = LIPREACH_VERSION;
  j["command"] = command;
  return j;
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

const std::string kRangeCsvHeader =
    "name,lower,upper,diameter,min_attained,max_attained,epsilon,converged,certified,evaluations";

std::string range_csv_row(const std::string& name, const ReachResult& r) {
  std::ostringstream s;
  s << name << ',' << fmt(r.lower) << ',' << fmt(r.upper) << ',' << fmt(r.diameter) << ','
    << fmt(r.min_attained) << ',' << fmt(r.max_attained) << ',' << fmt(r.epsilon) << ','
    << (r.converged ? "true" : "false") << ',' << (r.certified ? "true" : "false") << ','
    << r.evaluations;
  return s.str();
}

std::string default_o_spec(const Query& q) { return q.o_spec.value_or("project"); }

int cmd_range(const QueryFlags& f, std::ostream& out) {
  const Resolved r = resolve(f, QueryKind::Range);
  const std::string o_spec = default_o_spec(r.query);
  const OutputFunction o = make_output_function(o_spec, r.query.label);
  const ReachResult res = reachability(*r.net, r.query.subspace.to_subspace(), o, r.tap, r.options);

  if (f.csv) {
    out << kRangeCsvHeader << '\n' << range_csv_row(r.net->name(), res) << '\n';
  } else {
    Json j = envelope("range");
    j["query"] = echo(r, o_spec);
    j["result"] = range_json(res, f.timing);
    j["lipschitz"] = budget_json(res.network_budget, res.objective_constant, r.options.mode);
    print(out, j);
  }
  return res.converged ? kOk : kUndecided;
}

int cmd_verify(const QueryFlags& f, std::ostream& out) {
  const Resolved r = resolve(f, QueryKind::Safety);
  const SafetyVerdict v = verify_safety(*r.net, r.query.subspace.to_subspace(), r.tap, r.options);

  if (f.csv) {
    out << "name,verdict,base_label,sup_bound,sup_attained,error_band,certified,evaluations\n"
        << r.net->name() << ',' << to_string(v.verdict) << ',' << v.base_label << ','
        << fmt(v.sup_bound) << ',' << fmt(v.sup_attained) << ',' << fmt(v.error_band) << ','
        << (v.certified ? "true" : "false") << ',' << v.evaluations << '\n';
  } else {
    Json j = envelope("verify");
    j["query"] = echo(r, "margin");
    Json res;
    res["verdict"] = to_string(v.verdict);
    res["base_label"] = v.base_label;
    res["sup_bound"] = num(v.sup_bound);
    res["sup_attained"] = num(v.sup_attained);
    res["witness"] = v.witness ? vec(*v.witness) : Json(nullptr);
    if (v.witness) res["witness_output"] = vec(r.net->forward(*v.witness, r.tap));
    res["error_band"] = num(v.error_band);
    res["certified"] = v.certified;
    res["evaluations"] = v.evaluations;
    if (f.timing) res["wall_ms"] = num(v.wall_ms);
    j["result"] = res;
    j["lipschitz"] = budget_json(network_constant(*r.net, r.tap), v.objective_constant, r.options.mode);
    print(out, j);
  }
  switch (v.verdict) {
    case Verdict::Safe:
      return kOk;
    case Verdict::Unsafe:
      return kUnsafe;
    case Verdict::Unknown:
      return kUndecided;
  }
  return kUndecided;
}

int cmd_compare(const QueryFlags& f, std::ostream& out) {
  const Resolved r = resolve(f, QueryKind::Compare);
  const std::string o_spec = default_o_spec(r.query);
  const OutputFunction o = make_output_function(o_spec, r.query.label);
  const QuerySubspace first = r.query.subspace.to_subspace();

  Comparison c;
  std::string second_name;
  if (r.net_b) {
    c = compare_networks(*r.net, *r.net_b, o, first, r.tap, r.options);
    second_name = r.net_b->name();
  } else {
    c = compare_subspaces(*r.net, first, r.query.subspace_b->to_subspace(), o, r.tap, r.options);
    second_name = r.net->name() + "@second";
  }

  if (f.csv) {
    out << kRangeCsvHeader << ",ordering\n"
        << range_csv_row(r.net->name(), c.first) << ',' << to_string(c.ordering) << '\n'
        << range_csv_row(second_name, c.second) << ',' << to_string(c.ordering) << '\n';
  } else {
    Json j = envelope("compare");
    j["query"] = echo(r, o_spec);
    Json res;
    res["ordering"] = to_string(c.ordering);
    res["indifference_band"] = num(c.indifference_band);
    res["first"] = range_json(c.first, f.timing);
    res["second"] = range_json(c.second, f.timing);
    j["result"] = res;
    j["lipschitz"] = {
        {"first", budget_json(c.first.network_budget, c.first.objective_constant, r.options.mode)},
        {"second", budget_json(c.second.network_budget, c.second.objective_constant, r.options.mode)}};
    print(out, j);
  }
  return c.first.converged && c.second.converged ? kOk : kUndecided;
}

struct OracleFlags {
  QueryFlags q;
  std::vector<double> steps;
  std::size_t cap = 50'000'000;
};

int cmd_oracle(const OracleFlags& f, std::ostream& out) {
  Resolved r = resolve(f.q, std::nullopt);
  const QuerySubspace s = r.query.subspace.to_subspace();
  validate_subspace(s, *r.net);

  // A safety query scans the margin against the base input's label.
  std::string o_spec = default_o_spec(r.query);
  std::optional<std::size_t> label = r.query.label;
  if (!r.query.o_spec && r.query.kind == QueryKind::Safety) {
    const Vector c = r.net->forward(s.base, r.tap);
    Eigen::Index top = 0;
    c.maxCoeff(&top);
    o_spec = "margin";
    label = static_cast<std::size_t>(top);
  }
  const OutputFunction o = make_output_function(o_spec, label);
  o.check_width(r.net->output_width(r.tap));

  GridSpec grid;
  grid.steps = !f.steps.empty() ? f.steps : r.query.grid_steps;
  if (grid.steps.empty()) throw DomainError("oracle needs --step or \"grid_step\" in the query");
  grid.cap = f.cap;

  const auto start = Clock::now();
  const NetworkModel& net = *r.net;
  const EvalTap tap = r.tap;
  const GridResult g = grid_extrema([&](const Vector& x) { return o(net.forward(x, tap)); }, s, grid, f.q.threads);
  const double wall = ms_since(start);
  const double k = o.lipschitz() * network_constant(net, tap).network_constant;

  if (f.q.csv) {
    out << "name,min,max,points,lattice_error\n"
        << net.name() << ',' << fmt(g.min_value) << ',' << fmt(g.max_value) << ',' << g.points << ','
        << fmt(g.lattice_error(k)) << '\n';
  } else {
    Json j = envelope("oracle");
    j["query"] = echo(r, o_spec);
    Json res;
    res["min"] = num(g.min_value);
    res["max"] = num(g.max_value);
    res["argmin"] = vec(g.argmin);
    res["argmax"] = vec(g.argmax);
    res["points"] = g.points;
    res["steps"] = vec(g.steps);
    res["objective_constant"] = num(k);
    res["lattice_error"] = num(g.lattice_error(k));
    if (f.q.timing) res["wall_ms"] = num(wall);
    j["result"] = res;
    print(out, j);
  }
  return kOk;
}

struct GensatFlags {
  std::string cnf;
  std::string out;
  std::size_t threads = 1;
};

int cmd_gensat(const GensatFlags& f, std::ostream& out) {
  const CnfFormula formula = parse_dimacs_file(f.cnf);
  const NetworkModel net = build_network(formula);
  const std::filesystem::path model_path = f.out;
  std::filesystem::path sidecar_path = model_path;
  sidecar_path.replace_extension(".sidecar.json");

  save_model_file(net, model_path);
  {
    std::ofstream side(sidecar_path);
    if (!side) throw Error("cannot write " + sidecar_path.string());
    side << sat_sidecar(formula, model_path).dump(2) << '\n';
  }

  Json j = envelope("gensat");
  j["cnf"] = f.cnf;
  j["model"] = model_path.string();
  j["sidecar"] = sidecar_path.string();
  j["num_vars"] = formula.num_vars;
  j["num_clauses"] = formula.clauses.size();
  if (formula.num_vars <= kMaxCornerVars) {
    const CornerDecision d = corner_decision(formula, f.threads);
    j["corner_decision"] = {{"result", d.satisfiable ? "sat" : "unsat"},
                            {"corner_min", num(d.corner_min)},
                            {"corner", vec(d.corner)}};
  } else {
    j["corner_decision"] = nullptr;
  }
  print(out, j);
  return kOk;
}

struct BenchFlags {
  std::string suite = "desk";
  double epsilon = kDefaultRangeEps;
  std::string mode = "static";
  double eta = kDefaultEta;
  std::string nested = "adaptive";
  std::size_t threads = 1;
  bool no_twins = false;
  bool csv = false;
  bool timing = false;
};

struct BenchRow {
  std::string name;
  std::ptrdiff_t twin_of = -1;
  std::size_t depth = 0;
  std::size_t neurons = 0;
  ReachResult result;
};

std::vector<SuiteEntry> load_suite(const BenchFlags& f) {
  if (f.suite == "desk") return benchmark_suite(!f.no_twins);
  if (f.suite == "empty") return {};
  std::ifstream in(f.suite);
  if (!in) throw ParseError("cannot open suite " + f.suite);
  nlohmann::json s;
  try {
    s = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("suite: ") + e.what());
  }
  if (!s.is_object() || !s.contains("networks") || !s.at("networks").is_array())
    throw ParseError("suite needs a \"networks\" array of model paths");
  const auto dir = std::filesystem::path(f.suite).parent_path();
  std::vector<SuiteEntry> entries;
  for (const auto& p : s.at("networks")) {
    if (!p.is_string()) throw ParseError("suite entries must be model paths");
    std::filesystem::path path = p.get<std::string>();
    if (path.is_relative()) path = dir / path;
    entries.push_back({load_model_file(path), -1});
  }
  if (!f.no_twins) {
    const std::size_t base = entries.size();
    for (std::size_t i = 0; i < base; ++i)
      entries.push_back({pad_hidden_width(entries[i].net, 2), static_cast<std::ptrdiff_t>(i)});
  }
  return entries;
}

/// The whole input box, every coordinate free.
QuerySubspace full_box(const NetworkModel& net) {
  QuerySubspace s;
  const auto n = static_cast<Eigen::Index>(net.input_dim());
  s.base = Vector::Constant(n, net.input_box().lower);
  for (std::size_t i = 0; i < net.input_dim(); ++i) {
    s.free_dims.push_back(i);
    s.bounds.emplace_back(net.input_box().lower, net.input_box().upper);
  }
  return s;
}

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  if (!(f.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const auto suite = load_suite(f);
  ReachOptions options;
  options.epsilon = f.epsilon;
  options.mode = lipschitz_mode_from_string(f.mode);
  options.eta = f.eta;
  options.nested = nested_mode_from_string(f.nested);
  options.threads = f.threads;

  std::vector<BenchRow> rows;
  bool all_converged = true;
  for (const auto& e : suite) {
    BenchRow row;
    row.name = e.net.name();
    row.twin_of = e.twin_of;
    row.depth = e.net.layers().size();
    row.neurons = e.net.neuron_count();
    row.result = output_range(e.net, full_box(e.net), 0, EvalTap::Output, options);
    all_converged = all_converged && row.result.converged;
    rows.push_back(std::move(row));
  }

  if (f.csv) {
    out << "name,twin_of,depth,neurons,objective_constant,lower,upper,diameter,evaluations,converged";
    if (f.timing) out << ",wall_ms";
    out << '\n';
    for (const auto& r : rows) {
      out << r.name << ',' << (r.twin_of >= 0 ? rows[static_cast<std::size_t>(r.twin_of)].name : "")
          << ',' << r.depth << ',' << r.neurons << ',' << fmt(r.result.objective_constant) << ','
          << fmt(r.result.lower) << ',' << fmt(r.result.upper) << ',' << fmt(r.result.diameter) << ','
          << r.result.evaluations << ',' << (r.result.converged ? "true" : "false");
      if (f.timing) out << ',' << fmt(r.result.wall_ms);
      out << '\n';
    }
  } else {
    Json j = envelope("bench");
    j["suite"] = f.suite;
    j["epsilon"] = num(f.epsilon);
    j["mode"] = f.mode;
    j["nested_mode"] = f.nested;
    Json table = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["name"] = r.name;
      row["twin_of"] = r.twin_of >= 0 ? Json(rows[static_cast<std::size_t>(r.twin_of)].name) : Json(nullptr);
      row["depth"] = r.depth;
      row["neurons"] = r.neurons;
      row["objective_constant"] = num(r.result.objective_constant);
      row["lower"] = num(r.result.lower);
      row["upper"] = num(r.result.upper);
      row["diameter"] = num(r.result.diameter);
      row["evaluations"] = r.result.evaluations;
      row["converged"] = r.result.converged;
      if (f.timing) row["wall_ms"] = num(r.result.wall_ms);
      table.push_back(row);
    }
    j["rows"] = table;
    print(out, j);
  }
  return all_converged ? kOk : kUndecided;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lipschitz reachability analysis for feed-forward networks", "lipreach"};
  app.set_version_flag("--version", LIPREACH_VERSION);
  app.require_subcommand(1);

  QueryFlags range_flags;
  QueryFlags verify_flags;
  QueryFlags compare_flags;
  OracleFlags oracle_flags;
  GensatFlags gensat_flags;
  BenchFlags bench_flags;

  auto* range = app.add_subcommand("range", "Certified range of o(f(x)) over the query box");
  add_query_flags(range, range_flags);
  auto* verify = app.add_subcommand("verify", "Safety verdict: does every input keep the base label?");
  add_query_flags(verify, verify_flags);
  auto* compare = app.add_subcommand("compare", "Order two networks or two boxes by reachability diameter");
  add_query_flags(compare, compare_flags);

  auto* oracle = app.add_subcommand("oracle", "Brute-force lattice extrema for a query");
  add_query_flags(oracle, oracle_flags.q);
  oracle->add_option("--step", oracle_flags.steps, "Lattice step, one value or one per free dimension");
  oracle->add_option("--cap", oracle_flags.cap, "Maximum number of lattice points");

  auto* gensat = app.add_subcommand("gensat", "Build the network for a 3-CNF formula");
  gensat->add_option("cnf", gensat_flags.cnf, "DIMACS CNF file")->required();
  gensat->add_option("--out,-o", gensat_flags.out, "Model JSON to write")->required();
  gensat->add_option("--threads,-j", gensat_flags.threads, "Worker threads for corner enumeration")
      ->check(CLI::PositiveNumber);

  auto* bench = app.add_subcommand("bench", "Range sweep over a suite of networks");
  bench->add_option("--suite", bench_flags.suite, "\"desk\", \"empty\" or a suite JSON file");
  bench->add_option("--epsilon,-e", bench_flags.epsilon, "Total error tolerance");
  bench->add_option("--mode", bench_flags.mode, "Lipschitz mode")->check(CLI::IsMember({"static", "dynamic"}));
  bench->add_option("--eta", bench_flags.eta, "Inflation factor for dynamic mode (> 1)");
  bench->add_option("--nested", bench_flags.nested, "Nested scheme")->check(CLI::IsMember({"strict", "adaptive"}));
  bench->add_option("--threads,-j", bench_flags.threads, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_flag("--no-twins", bench_flags.no_twins, "Skip the width-doubled copies");
  auto* bench_csv = bench->add_flag("--csv", bench_flags.csv, "Print a CSV table");
  bench->add_flag("--json", "Print a JSON report (default)")->excludes(bench_csv);
  bench->add_flag("--timing", bench_flags.timing, "Include wall-clock time in the report");

  std::vector<std::string> argv_store{"lipreach"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (range->parsed()) return cmd_range(range_flags, out);
    if (verify->parsed()) return cmd_verify(verify_flags, out);
    if (compare->parsed()) return cmd_compare(compare_flags, out);
    if (oracle->parsed()) return cmd_oracle(oracle_flags, out);
    if (gensat->parsed()) return cmd_gensat(gensat_flags, out);
    if (bench->parsed()) return cmd_bench(bench_flags, out);
  } catch (const EvaluationError& e) {
    err << "error: " << e.what() << " at [";
    for (std::size_t i = 0; i < e.point().size(); ++i) err << (i ? ", " : "") << fmt(e.point()[i]);
    err << "]\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace lipreach::cli
