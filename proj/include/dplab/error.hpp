#pragma once

#include <stdexcept>
#include <string>

namespace dplab {

/// Raised when an operation is called outside its domain of validity.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative solve fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// A checker's hypothesis does not hold on its input (distinct from the
/// check's conclusion failing).
class HypothesisViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dplab
