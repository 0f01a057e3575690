#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lipreach/lipschitz.hpp"
#include "lipreach/model.hpp"
#include "lipreach/optnd.hpp"
#include "lipreach/reach.hpp"
#include "lipreach/subspace.hpp"

namespace lipreach {

enum class QueryKind { Range, Safety, Compare };

std::string_view to_string(QueryKind k);
QueryKind query_kind_from_string(std::string_view s);

/// Box part of a query as written in the file; the base vector length is
/// checked against the model only once the model is loaded.
struct SubspaceSpec {
  std::vector<double> base;
  std::vector<std::size_t> free_dims;
  std::vector<std::pair<double, double>> bounds;

  QuerySubspace to_subspace() const;
};

/// A parsed query file. Optional fields fall back to command-line values
/// or built-in defaults in the front end.
struct Query {
  QueryKind kind = QueryKind::Range;
  std::filesystem::path model;
  SubspaceSpec subspace;
  std::optional<std::size_t> label;
  std::optional<EvalTap> tap;
  std::optional<double> epsilon;
  std::optional<LipschitzMode> mode;
  std::optional<double> eta;
  std::optional<NestedMode> nested;
  /// "project", "margin" or "max-of-outputs".
  std::optional<std::string> o_spec;
  /// Second network (network comparison) or second box (subspace comparison).
  std::optional<std::filesystem::path> model_b;
  std::optional<SubspaceSpec> subspace_b;
  /// Lattice steps for the oracle command.
  std::vector<double> grid_steps;
};

LipschitzMode lipschitz_mode_from_string(std::string_view s);
std::string_view to_string(LipschitzMode m);

/// Relative model paths are resolved against `base_dir`.
Query parse_query(std::string_view text, const std::filesystem::path& base_dir = {});
Query load_query_file(const std::filesystem::path& path);

/// Builds o from a name, the query label and the output width it will see.
OutputFunction make_output_function(std::string_view o_spec, std::optional<std::size_t> label);

}  // namespace lipreach
