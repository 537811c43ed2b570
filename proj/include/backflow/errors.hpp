#pragma once

#include <stdexcept>
#include <string>

namespace backflow {

// Argument outside the mathematical domain of a function (negative Fresnel
// argument, point on a branch cut, non-finite input).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Invalid model or run parameters.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Evaluation at a point where a closed form is singular (t = +-1).
struct SingularityError : std::domain_error {
  using std::domain_error::domain_error;
};

// Numerical failure: overflow, eigensolver breakdown.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested tolerance could not be met; carries the best estimate.
struct AccuracyError : std::runtime_error {
  AccuracyError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), best_estimate(estimate), error_estimate(error) {}
  double best_estimate;
  double error_estimate;
};

}  // namespace backflow
