#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lipreach/model.hpp"
#include "lipreach/optnd.hpp"

namespace lipreach {

/// Axis-aligned box over a subset of input coordinates; every other
/// coordinate stays at its value in `base`.
struct QuerySubspace {
  Vector base;
  std::vector<std::size_t> free_dims;
  std::vector<std::pair<double, double>> bounds;

  std::size_t dimension() const noexcept { return free_dims.size(); }
  std::vector<FreeDim> as_free_dims() const;
  /// True when the free coordinates of `x` lie in the box and the fixed ones equal base.
  bool contains(const Vector& x, double tol = 0.0) const;
};

/// Checks the subspace invariants against a model's input layout.
/// Throws ShapeError or DomainError.
void validate_subspace(const QuerySubspace& s, const NetworkModel& net);

}  // namespace lipreach
