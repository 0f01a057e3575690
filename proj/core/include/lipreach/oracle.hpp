#pragma once

#include <cstddef>
#include <vector>

#include "lipreach/optnd.hpp"
#include "lipreach/subspace.hpp"

namespace lipreach {

/// Lattice steps per free dimension (a single entry applies to all).
struct GridSpec {
  std::vector<double> steps;
  std::size_t cap = 50'000'000;
};

struct GridResult {
  double min_value = 0.0;
  double max_value = 0.0;
  Vector argmin;
  Vector argmax;
  std::size_t points = 0;
  std::vector<double> steps;

  /// How far below min_value (or above max_value) the true extremum can
  /// sit for a K-Lipschitz objective: K * sum(steps) / 2.
  double lattice_error(double k) const;
};

/// Number of lattice points per free dimension, endpoints included.
std::vector<std::size_t> lattice_shape(const QuerySubspace& subspace, const GridSpec& grid);

/// Exhaustive evaluation over the lattice. Ties go to the lexicographically
/// smallest lattice point, independent of `threads`.
GridResult grid_extrema(const ObjectiveND& objective, const QuerySubspace& subspace,
                        const GridSpec& grid, std::size_t threads = 1);

}  // namespace lipreach
