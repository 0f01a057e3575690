#include "lipreach/oracle.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "lipreach/error.hpp"
#include "lipreach/parallel.hpp"

namespace lipreach {

namespace {

std::vector<double> resolve_steps(const QuerySubspace& s, const GridSpec& grid) {
  if (grid.steps.size() != 1 && grid.steps.size() != s.dimension())
    throw DomainError("grid needs one step or one step per free dimension");
  std::vector<double> steps(s.dimension(), grid.steps.empty() ? 0.0 : grid.steps[0]);
  if (grid.steps.size() == s.dimension()) steps = grid.steps;
  for (double d : steps)
    if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("grid steps must be positive");
  return steps;
}

struct Extrema {
  double min_value = INFINITY;
  double max_value = -INFINITY;
  std::size_t argmin = 0;
  std::size_t argmax = 0;
};

}  // namespace

double GridResult::lattice_error(double k) const {
  return k * std::accumulate(steps.begin(), steps.end(), 0.0) / 2.0;
}

std::vector<std::size_t> lattice_shape(const QuerySubspace& subspace, const GridSpec& grid) {
  const auto steps = resolve_steps(subspace, grid);
  std::vector<std::size_t> shape(subspace.dimension());
  for (std::size_t k = 0; k < shape.size(); ++k) {
    const double width = subspace.bounds[k].second - subspace.bounds[k].first;
    if (!(width >= 0.0)) throw DomainError("grid bounds must satisfy a <= b");
    // Relative slack keeps width/step = 1000.0000000001 from adding a point.
    shape[k] = static_cast<std::size_t>(std::ceil(width / steps[k] - 1e-9)) + 1;
  }
  return shape;
}

GridResult grid_extrema(const ObjectiveND& objective, const QuerySubspace& subspace,
                        const GridSpec& grid, std::size_t threads) {
  if (subspace.free_dims.size() != subspace.bounds.size())
    throw ShapeError("subspace needs one [a, b] pair per free dimension");
  const auto steps = resolve_steps(subspace, grid);
  const auto shape = lattice_shape(subspace, grid);

  std::size_t total = 1;
  for (std::size_t n : shape) {
    if (total > grid.cap / n) throw DomainError("grid exceeds the point cap of " + std::to_string(grid.cap));
    total *= n;
  }

  const std::size_t dims = shape.size();
  auto coordinate = [&](std::size_t k, std::size_t i) {
    return i + 1 == shape[k] ? subspace.bounds[k].second
                             : subspace.bounds[k].first + static_cast<double>(i) * steps[k];
  };
  auto point_at = [&](std::size_t flat) {
    Vector x = subspace.base;
    for (std::size_t k = dims; k-- > 0;) {
      x[static_cast<Eigen::Index>(subspace.free_dims[k])] = coordinate(k, flat % shape[k]);
      flat /= shape[k];
    }
    return x;
  };

  const std::size_t chunks = std::max<std::size_t>(1, threads);
  std::vector<Extrema> partial(chunks);
  for_each_chunk(total, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
    Extrema e;
    if (begin == end) {
      partial[c] = e;
      return;
    }
    Vector x = point_at(begin);
    std::vector<std::size_t> digits(dims);
    for (std::size_t k = dims, f = begin; k-- > 0;) {
      digits[k] = f % shape[k];
      f /= shape[k];
    }
    for (std::size_t flat = begin; flat < end; ++flat) {
      const double v = objective(x);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "objective returned " << v << " at lattice point " << flat;
        throw EvaluationError(msg.str(), std::vector<double>(x.data(), x.data() + x.size()));
      }
      if (v < e.min_value) {
        e.min_value = v;
        e.argmin = flat;
      }
      if (v > e.max_value) {
        e.max_value = v;
        e.argmax = flat;
      }
      // Odometer increment, last free dimension fastest.
      for (std::size_t k = dims; k-- > 0;) {
        const auto idx = static_cast<Eigen::Index>(subspace.free_dims[k]);
        if (++digits[k] < shape[k]) {
          x[idx] = coordinate(k, digits[k]);
          break;
        }
        digits[k] = 0;
        x[idx] = coordinate(k, 0);
      }
    }
    partial[c] = e;
  });

  Extrema best;
  for (const auto& e : partial) {
    if (e.min_value < best.min_value) {
      best.min_value = e.min_value;
      best.argmin = e.argmin;
    }
    if (e.max_value > best.max_value) {
      best.max_value = e.max_value;
      best.argmax = e.argmax;
    }
  }

  GridResult r;
  r.min_value = best.min_value;
  r.max_value = best.max_value;
  r.argmin = point_at(best.argmin);
  r.argmax = point_at(best.argmax);
  r.points = total;
  r.steps = steps;
  return r;
}

}  // namespace lipreach
