#pragma once

#include <stdexcept>
#include <string>

namespace muflux {

// Argument outside an operation's domain (negative dimension, zero live time,
// unsorted records, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid run configuration: missing surface reference, bad option values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable input data: wrong log header, bad-line budget exhausted.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degenerate least-squares problem.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature did not reach its tolerance within the subdivision budget.
// Carries the best available estimate so callers may still use it.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace muflux
