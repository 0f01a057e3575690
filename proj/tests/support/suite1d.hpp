#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace suite1d {

/// Analytic objective with a constant strictly above its best Lipschitz constant.
struct Objective {
  std::string name;
  std::function<double(double)> f;
  double a;
  double b;
  double k;
};

inline void PrintTo(const Objective& o, std::ostream* os) { *os << o.name; }

inline double triangle(double x) {
  // Period 2, values in [0, 1], slope +-1.
  const double t = std::fmod(x, 2.0);
  return t < 1.0 ? t : 2.0 - t;
}

inline std::vector<Objective> objectives() {
  using std::numbers::pi;
  return {
      {"zero", [](double) { return 0.0; }, 0.0, 1.0, 1.0},
      {"constant", [](double) { return 3.7; }, -2.0, 5.0, 0.5},
      {"identity", [](double x) { return x; }, 0.0, 1.0, 2.0},
      {"falling_line", [](double x) { return 1.0 - 2.0 * x; }, -1.0, 3.0, 2.5},
      {"sin", [](double x) { return std::sin(x); }, 0.0, 2.0 * pi, 1.1},
      {"sin_sin", [](double x) { return std::sin(x) + std::sin(10.0 * x / 3.0); }, 2.7, 7.5, 4.5},
      {"two_kinks", [](double x) { return std::abs(x - 0.3) + 0.5 * std::abs(x - 0.8); }, 0.0, 1.0, 1.6},
      {"triangle_wave", [](double x) { return 1.5 - 3.0 * triangle(x + 0.25); }, 0.0, 4.0, 3.3},
      {"parabola", [](double x) { return x * x; }, -1.0, 2.0, 4.2},
      {"damped_cos", [](double x) { return std::cos(3.0 * x) * std::exp(-x / 5.0); }, 0.0, 5.0, 3.5},
  };
}

}  // namespace suite1d
