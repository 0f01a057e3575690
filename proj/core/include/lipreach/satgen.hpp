#pragma once

#include <cstddef>
#include <filesystem>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lipreach/model.hpp"
#include "lipreach/optnd.hpp"

namespace lipreach {

struct Literal {
  std::size_t var = 1;  // 1-based
  bool positive = true;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;
};

/// Throws DomainError unless every clause has three literals over 1..num_vars.
void validate_formula(const CnfFormula& formula);

/// DIMACS CNF reader. Shorter clauses are padded to three literals by
/// repeating their last literal; longer ones are rejected.
CnfFormula parse_dimacs(std::string_view text);
CnfFormula parse_dimacs_file(const std::filesystem::path& path);

/// n inputs -> 2n relu (positive/negative parts) -> m relu clause units ->
/// m linear outputs holding minus each clause unit. Input box is [-1, 1].
NetworkModel build_network(const CnfFormula& formula);

/// Objective x -> max_i f(x)_i for a generated network (holds its own copy).
ObjectiveND sat_objective(const NetworkModel& net);

inline constexpr std::size_t kMaxCornerVars = 24;

struct CornerDecision {
  bool satisfiable = false;
  double corner_min = 0.0;
  /// A corner attaining corner_min (lowest index on ties), entries in {-1, 1}.
  Vector corner;
};

/// Minimum of the objective over {-1, 1}^n; satisfiable iff it is below 0.
CornerDecision corner_decision(const CnfFormula& formula, std::size_t threads = 1);

/// Companion metadata written next to a generated model.
nlohmann::json sat_sidecar(const CnfFormula& formula, const std::filesystem::path& model_path);

}  // namespace lipreach
