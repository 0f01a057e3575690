#include "lipreach/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "lipreach/error.hpp"

namespace lipreach {

std::vector<FreeDim> QuerySubspace::as_free_dims() const {
  std::vector<FreeDim> dims;
  dims.reserve(free_dims.size());
  for (std::size_t k = 0; k < free_dims.size(); ++k)
    dims.push_back({free_dims[k], bounds[k].first, bounds[k].second});
  return dims;
}

bool QuerySubspace::contains(const Vector& x, double tol) const {
  if (x.size() != base.size()) return false;
  std::vector<bool> is_free(static_cast<std::size_t>(base.size()), false);
  for (std::size_t k = 0; k < free_dims.size(); ++k) {
    const double v = x[static_cast<Eigen::Index>(free_dims[k])];
    if (v < bounds[k].first - tol || v > bounds[k].second + tol) return false;
    is_free[free_dims[k]] = true;
  }
  for (Eigen::Index i = 0; i < base.size(); ++i)
    if (!is_free[static_cast<std::size_t>(i)] && x[i] != base[i]) return false;
  return true;
}

void validate_subspace(const QuerySubspace& s, const NetworkModel& net) {
  if (static_cast<std::size_t>(s.base.size()) != net.input_dim())
    throw ShapeError("base input has length " + std::to_string(s.base.size()) +
                     ", network expects " + std::to_string(net.input_dim()));
  if (!s.base.allFinite()) throw DomainError("base input must be finite");
  if (s.free_dims.empty()) throw DomainError("subspace needs at least one free dimension");
  if (s.bounds.size() != s.free_dims.size())
    throw ShapeError("subspace needs one [a, b] pair per free dimension");

  auto sorted = s.free_dims;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("free dimensions must be distinct");

  const auto& box = net.input_box();
  for (std::size_t k = 0; k < s.free_dims.size(); ++k) {
    if (s.free_dims[k] >= net.input_dim())
      throw ShapeError("free dimension " + std::to_string(s.free_dims[k]) + " outside input");
    const auto [a, b] = s.bounds[k];
    if (!(a < b))
      throw DomainError("bounds of free dimension " + std::to_string(s.free_dims[k]) +
                        " must satisfy a < b");
    if (a < box.lower || b > box.upper)
      throw DomainError("bounds of free dimension " + std::to_string(s.free_dims[k]) +
                        " leave the model's input box");
  }
}

}  // namespace lipreach
