#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "lipreach/error.hpp"
#include "lipreach/oracle.hpp"

using namespace lipreach;

namespace {

QuerySubspace box1(double a, double b) { return QuerySubspace{Vector::Zero(1), {0}, {{a, b}}}; }

GridSpec step(double d) { return GridSpec{{d}}; }

}  // namespace

TEST(GridExtrema, ConstantZero) {
  const auto r = grid_extrema([](const Vector&) { return 0.0; }, box1(0, 1), step(0.25));
  EXPECT_EQ(r.min_value, 0.0);
  EXPECT_EQ(r.max_value, 0.0);
  EXPECT_EQ(r.points, 5u);
  // Ties resolve to the first lattice point.
  EXPECT_EQ(r.argmin[0], 0.0);
  EXPECT_EQ(r.argmax[0], 0.0);
}

TEST(GridExtrema, IdentityHitsEndpoints) {
  const auto r = grid_extrema([](const Vector& x) { return x[0]; }, box1(0, 1), step(0.5));
  EXPECT_EQ(r.points, 3u);
  EXPECT_EQ(r.min_value, 0.0);
  EXPECT_EQ(r.argmin[0], 0.0);
  EXPECT_EQ(r.max_value, 1.0);
  EXPECT_EQ(r.argmax[0], 1.0);
}

TEST(GridExtrema, SineMinimum) {
  const auto r = grid_extrema([](const Vector& x) { return std::sin(x[0]); }, box1(0, 2 * std::numbers::pi), step(1e-5));
  EXPECT_NEAR(r.min_value, -1.0, 1e-5);
  EXPECT_GE(r.min_value, -1.0);
  EXPECT_NEAR(r.max_value, 1.0, 1e-5);
  EXPECT_NEAR(r.argmin[0], 1.5 * std::numbers::pi, 1e-4);
  EXPECT_LE(r.lattice_error(1.0), 0.5e-5 + 1e-18);
}

TEST(GridExtrema, StepThatDoesNotDivideTheWidth) {
  // 0.3 into [0, 1]: points 0, 0.3, 0.6, 0.9 and the endpoint 1.
  const auto r = grid_extrema([](const Vector& x) { return -x[0]; }, box1(0, 1), step(0.3));
  EXPECT_EQ(r.min_value, -1.0);
  EXPECT_EQ(lattice_shape(box1(0, 1), step(0.3)), std::vector<std::size_t>{5});
  EXPECT_EQ(lattice_shape(box1(0, 1), step(0.1)), std::vector<std::size_t>{11});
  EXPECT_EQ(lattice_shape(box1(2, 2), step(0.1)), std::vector<std::size_t>{1});
}

TEST(GridExtrema, CornersAreIncluded) {
  const QuerySubspace s{Vector::Zero(3), {0, 2}, {{-1, 2}, {0.5, 0.8}}};
  GridSpec g{{0.7, 0.13}};
  bool seen[2][2] = {};
  const auto r = grid_extrema(
      [&](const Vector& x) {
        EXPECT_EQ(x[1], 0.0);
        if ((x[0] == -1 || x[0] == 2) && (x[2] == 0.5 || x[2] == 0.8)) seen[x[0] == 2][x[2] == 0.8] = true;
        return x[0] * x[2];
      },
      s, g);
  for (auto& row : seen)
    for (bool b : row) EXPECT_TRUE(b);
  EXPECT_EQ(r.points, 6u * 4u);
  EXPECT_DOUBLE_EQ(r.lattice_error(2.0), 0.83);
}

TEST(GridExtrema, DefaultsAndValidation) {
  const QuerySubspace s{Vector::Zero(2), {0, 1}, {{0, 1}, {0, 1}}};
  EXPECT_EQ(lattice_shape(s, step(0.5)), (std::vector<std::size_t>{3, 3}));
  EXPECT_THROW(lattice_shape(s, GridSpec{{0.5, 0.5, 0.5}}), DomainError);
  EXPECT_THROW(lattice_shape(s, step(0.0)), DomainError);
  EXPECT_THROW(lattice_shape(s, step(-1.0)), DomainError);
  EXPECT_THROW(lattice_shape(s, GridSpec{{}}), DomainError);
}

TEST(GridExtrema, CapIsEnforced) {
  const QuerySubspace s{Vector::Zero(2), {0, 1}, {{0, 1}, {0, 1}}};
  GridSpec g{{0.01}, 100};
  EXPECT_THROW(grid_extrema([](const Vector&) { return 0.0; }, s, g), DomainError);
  g.cap = 101 * 101;
  EXPECT_NO_THROW(grid_extrema([](const Vector&) { return 0.0; }, s, g));
}

TEST(GridExtrema, NonFiniteValue) {
  EXPECT_THROW(grid_extrema([](const Vector& x) { return x[0] > 0.6 ? std::numeric_limits<double>::quiet_NaN() : 0.0; },
                            box1(0, 1), step(0.25)),
               EvaluationError);
  EXPECT_THROW(grid_extrema([](const Vector&) { return std::numeric_limits<double>::infinity(); }, box1(0, 1), step(0.5)),
               EvaluationError);
}

TEST(GridExtrema, ThreadCountDoesNotMatter) {
  const QuerySubspace s{Vector::Zero(2), {0, 1}, {{0, 3}, {-1, 1}}};
  // Plateaus make ties: the answer must still be the first lattice point.
  const auto f = [](const Vector& x) { return std::floor(std::sin(3 * x[0]) * 2 + std::cos(2 * x[1]) * 2); };
  const auto a = grid_extrema(f, s, step(0.01), 1);
  for (std::size_t t : {2u, 3u, 4u, 7u}) {
    const auto b = grid_extrema(f, s, step(0.01), t);
    EXPECT_EQ(a.min_value, b.min_value);
    EXPECT_EQ(a.max_value, b.max_value);
    EXPECT_EQ(a.argmin, b.argmin);
    EXPECT_EQ(a.argmax, b.argmax);
    EXPECT_EQ(a.points, b.points);
  }
}

TEST(GridExtrema, ValuesAreAttained) {
  const auto f = [](const Vector& x) { return std::cos(5 * x[0]) * x[0]; };
  const auto r = grid_extrema(f, box1(-2, 2), step(0.001));
  EXPECT_EQ(f(r.argmin), r.min_value);
  EXPECT_EQ(f(r.argmax), r.max_value);
}
