#include "lipreach/query.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lipreach/error.hpp"

namespace lipreach {

namespace {

using nlohmann::json;

double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError(what + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(what + " must be finite");
  return d;
}

std::size_t index(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(what + " must be a non-negative integer");
  return v.get<std::size_t>();
}

std::string text(const json& v, const std::string& what) {
  if (!v.is_string()) throw ParseError(what + " must be a string");
  return v.get<std::string>();
}

template <class F>
auto translate(F&& f, const std::string& what) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ParseError(what + ": " + e.what());
  }
}

SubspaceSpec parse_subspace(const json& q, const std::string& suffix) {
  SubspaceSpec s;
  const std::string base_key = "base" + suffix;
  const std::string dims_key = "free_dims" + suffix;
  const std::string bounds_key = "bounds" + suffix;
  for (const auto& key : {base_key, dims_key, bounds_key})
    if (!q.contains(key) || !q.at(key).is_array()) throw ParseError("query needs array \"" + key + "\"");

  for (const auto& v : q.at(base_key)) s.base.push_back(number(v, base_key + " entry"));
  for (const auto& v : q.at(dims_key)) s.free_dims.push_back(index(v, dims_key + " entry"));
  for (const auto& b : q.at(bounds_key)) {
    if (!b.is_array() || b.size() != 2) throw ParseError(bounds_key + " entries must be [a, b] pairs");
    s.bounds.emplace_back(number(b[0], bounds_key + " entry"), number(b[1], bounds_key + " entry"));
  }
  if (s.bounds.size() != s.free_dims.size())
    throw ParseError(dims_key + " and " + bounds_key + " differ in length");
  return s;
}

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base_dir) {
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

}  // namespace

QuerySubspace SubspaceSpec::to_subspace() const {
  QuerySubspace s;
  s.base = Eigen::Map<const Vector>(base.data(), static_cast<Eigen::Index>(base.size()));
  s.free_dims = free_dims;
  s.bounds = bounds;
  return s;
}

std::string_view to_string(QueryKind k) {
  switch (k) {
    case QueryKind::Range:
      return "range";
    case QueryKind::Safety:
      return "safety";
    case QueryKind::Compare:
      return "compare";
  }
  return "range";
}

QueryKind query_kind_from_string(std::string_view s) {
  if (s == "range") return QueryKind::Range;
  if (s == "safety") return QueryKind::Safety;
  if (s == "compare") return QueryKind::Compare;
  throw DomainError("unknown query kind \"" + std::string(s) + "\"");
}

LipschitzMode lipschitz_mode_from_string(std::string_view s) {
  if (s == "static") return LipschitzMode::Static;
  if (s == "dynamic") return LipschitzMode::Dynamic;
  throw DomainError("unknown mode \"" + std::string(s) + "\"");
}

std::string_view to_string(LipschitzMode m) { return m == LipschitzMode::Static ? "static" : "dynamic"; }

Query parse_query(std::string_view raw, const std::filesystem::path& base_dir) {
  json q;
  try {
    q = json::parse(raw);
  } catch (const json::exception& e) {
    throw ParseError(std::string("query: ") + e.what());
  }
  if (!q.is_object()) throw ParseError("query must be a JSON object");
  if (!q.contains("model")) throw ParseError("query needs \"model\"");

  Query out;
  out.model = resolve(text(q.at("model"), "model"), base_dir);
  if (q.contains("query"))
    out.kind = translate([&] { return query_kind_from_string(text(q.at("query"), "query")); }, "query");
  out.subspace = parse_subspace(q, "");

  if (q.contains("label")) out.label = index(q.at("label"), "label");
  if (q.contains("tap")) out.tap = translate([&] { return tap_from_string(text(q.at("tap"), "tap")); }, "tap");
  if (q.contains("epsilon")) {
    out.epsilon = number(q.at("epsilon"), "epsilon");
    if (!(*out.epsilon > 0.0)) throw ParseError("epsilon must be positive");
  }
  if (q.contains("mode"))
    out.mode = translate([&] { return lipschitz_mode_from_string(text(q.at("mode"), "mode")); }, "mode");
  if (q.contains("eta")) out.eta = number(q.at("eta"), "eta");
  if (q.contains("nested_mode"))
    out.nested = translate(
        [&] { return nested_mode_from_string(text(q.at("nested_mode"), "nested_mode")); }, "nested_mode");
  if (q.contains("o_spec")) {
    out.o_spec = text(q.at("o_spec"), "o_spec");
    translate([&] { return make_output_function(*out.o_spec, out.label.value_or(0)); }, "o_spec");
  }
  if (q.contains("model_b")) out.model_b = resolve(text(q.at("model_b"), "model_b"), base_dir);
  if (q.contains("base_b") || q.contains("free_dims_b") || q.contains("bounds_b"))
    out.subspace_b = parse_subspace(q, "_b");
  if (q.contains("grid_step")) {
    const auto& g = q.at("grid_step");
    if (g.is_array()) {
      for (const auto& v : g) out.grid_steps.push_back(number(v, "grid_step entry"));
    } else {
      out.grid_steps.push_back(number(g, "grid_step"));
    }
  }
  if (out.kind == QueryKind::Compare && !out.model_b && !out.subspace_b)
    throw ParseError("compare query needs \"model_b\" or a second box (\"base_b\", \"free_dims_b\", \"bounds_b\")");
  return out;
}

Query load_query_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_query(buf.str(), path.parent_path());
}

OutputFunction make_output_function(std::string_view o_spec, std::optional<std::size_t> label) {
  if (o_spec == "max-of-outputs") return OutputFunction::max_output();
  if (o_spec == "project") return OutputFunction::project(label.value_or(0));
  if (o_spec == "margin") return OutputFunction::margin(label.value_or(0));
  throw DomainError("unknown o_spec \"" + std::string(o_spec) + "\"");
}

}  // namespace lipreach
