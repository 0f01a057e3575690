#include "lipreach/satgen.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lipreach/error.hpp"
#include "lipreach/parallel.hpp"

namespace lipreach {

void validate_formula(const CnfFormula& formula) {
  if (formula.num_vars == 0) throw DomainError("formula has no variables");
  if (formula.clauses.empty()) throw DomainError("formula has no clauses");
  for (std::size_t i = 0; i < formula.clauses.size(); ++i) {
    const auto& c = formula.clauses[i];
    if (c.size() != 3)
      throw DomainError("clause " + std::to_string(i + 1) + " has " + std::to_string(c.size()) +
                        " literals, expected 3");
    for (const auto& lit : c)
      if (lit.var < 1 || lit.var > formula.num_vars)
        throw DomainError("clause " + std::to_string(i + 1) + " references variable " +
                          std::to_string(lit.var));
  }
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  CnfFormula f;
  bool header = false;
  std::size_t declared_clauses = 0;
  Clause current;
  std::size_t line_no = 0;

  auto fail = [&](const std::string& msg) {
    throw ParseError("dimacs line " + std::to_string(line_no) + ": " + msg);
  };
  auto close_clause = [&] {
    if (current.empty()) fail("empty clause");
    if (current.size() > 3) fail("clause has more than 3 literals");
    while (current.size() < 3) current.push_back(current.back());
    f.clauses.push_back(current);
    current.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "c") continue;
    if (first == "%") break;  // SATLIB trailer
    if (first == "p") {
      std::string fmt;
      long long n = -1;
      long long m = -1;
      if (header) fail("duplicate header");
      if (!(tokens >> fmt >> n >> m) || fmt != "cnf" || n < 1 || m < 0) fail("bad 'p cnf' header");
      f.num_vars = static_cast<std::size_t>(n);
      declared_clauses = static_cast<std::size_t>(m);
      header = true;
      continue;
    }
    if (!header) fail("clause before 'p cnf' header");
    std::istringstream lits(line);
    std::string tok;
    while (lits >> tok) {
      long long v = 0;
      try {
        std::size_t used = 0;
        v = std::stoll(tok, &used);
        if (used != tok.size()) fail("bad literal '" + tok + "'");
      } catch (const std::logic_error&) {
        fail("bad literal '" + tok + "'");
      }
      if (v == 0) {
        close_clause();
        continue;
      }
      const auto var = static_cast<std::size_t>(std::llabs(v));
      if (var > f.num_vars) fail("variable " + std::to_string(var) + " exceeds header count");
      current.push_back({var, v > 0});
    }
  }
  if (!header) throw ParseError("dimacs: missing 'p cnf' header");
  if (!current.empty()) close_clause();
  if (f.clauses.size() != declared_clauses)
    throw ParseError("dimacs: header declares " + std::to_string(declared_clauses) +
                     " clauses, found " + std::to_string(f.clauses.size()));
  validate_formula(f);
  return f;
}

CnfFormula parse_dimacs_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dimacs(buf.str());
}

NetworkModel build_network(const CnfFormula& formula) {
  validate_formula(formula);
  const auto n = static_cast<Eigen::Index>(formula.num_vars);
  const auto m = static_cast<Eigen::Index>(formula.clauses.size());

  // Unit 2i is the positive part of v_i, unit 2i+1 the negative part.
  DenseLayer split{Matrix::Zero(2 * n, n), Vector::Zero(2 * n), Activation::Relu};
  for (Eigen::Index i = 0; i < n; ++i) {
    split.weights(2 * i, i) = 1.0;
    split.weights(2 * i + 1, i) = -1.0;
  }

  DenseLayer clauses{Matrix::Zero(m, 2 * n), Vector::Zero(m), Activation::Relu};
  for (Eigen::Index c = 0; c < m; ++c)
    for (const auto& lit : formula.clauses[static_cast<std::size_t>(c)]) {
      // At a corner the unit counts the clause's true literals.
      const auto v = static_cast<Eigen::Index>(lit.var - 1);
      clauses.weights(c, lit.positive ? 2 * v : 2 * v + 1) += 1.0;
    }

  DenseLayer negate{-Matrix::Identity(m, m), Vector::Zero(m), Activation::None};

  std::vector<Layer> layers{split, clauses, negate};
  return NetworkModel("3sat", formula.num_vars, std::move(layers), InputBox{-1.0, 1.0});
}

ObjectiveND sat_objective(const NetworkModel& net) {
  return [net](const Vector& x) { return net.forward(x).maxCoeff(); };
}

CornerDecision corner_decision(const CnfFormula& formula, std::size_t threads) {
  validate_formula(formula);
  if (formula.num_vars > kMaxCornerVars)
    throw DomainError("corner enumeration limited to " + std::to_string(kMaxCornerVars) +
                      " variables, formula has " + std::to_string(formula.num_vars));
  const NetworkModel net = build_network(formula);
  const std::size_t n = formula.num_vars;
  const std::size_t total = std::size_t{1} << n;

  auto corner_of = [n](std::size_t bits) {
    Vector x(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) x[static_cast<Eigen::Index>(i)] = (bits >> i) & 1U ? 1.0 : -1.0;
    return x;
  };

  struct Best {
    double value = INFINITY;
    std::size_t index = 0;
  };
  const std::size_t chunks = std::max<std::size_t>(1, threads);
  std::vector<Best> partial(chunks);
  for_each_chunk(total, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
    Best b;
    for (std::size_t bits = begin; bits < end; ++bits) {
      const double v = net.forward(corner_of(bits)).maxCoeff();
      if (v < b.value) b = {v, bits};
    }
    partial[c] = b;
  });
  Best best;
  for (const auto& b : partial)
    if (b.value < best.value) best = b;

  return {best.value < 0.0, best.value, corner_of(best.index)};
}

nlohmann::json sat_sidecar(const CnfFormula& formula, const std::filesystem::path& model_path) {
  return {{"model", model_path.filename().string()},
          {"input_box", {-1.0, 1.0}},
          {"o_spec", "max-of-outputs"},
          {"num_vars", formula.num_vars},
          {"num_clauses", formula.clauses.size()}};
}

}  // namespace lipreach
