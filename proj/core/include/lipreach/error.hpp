#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lipreach {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (model JSON, query JSON, DIMACS).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Layer widths, vector lengths or dimension indices that do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside an operation's domain (empty interval, eps <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The objective produced a non-finite value. Carries the offending input.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::vector<double> point)
      : Error(what), point_(std::move(point)) {}

  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

}  // namespace lipreach
