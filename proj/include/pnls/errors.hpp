#pragma once

#include <stdexcept>
#include <string>

namespace pnls {

// Argument outside the domain of a scalar function (x <= 0, NaN, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Invalid or inadmissible run parameters. The CLI maps these to exit code 3.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// omega too close to -e_alpha: beta_alpha(omega) below the solver guard.
struct BetaGuardError : ParameterError {
  using ParameterError::ParameterError;
};

struct GridTooLargeError : ParameterError {
  using ParameterError::ParameterError;
};

// Solver did not produce an admissible state. The CLI maps these to exit code 2.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PositivityError : ConvergenceError {
  using ConvergenceError::ConvergenceError;
};

}  // namespace pnls
