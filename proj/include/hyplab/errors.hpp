#pragma once

#include <stdexcept>
#include <string>

namespace hyplab {

// Exception hierarchy. The CLI maps these to exit codes:
// UsageError -> 1, DataError -> 2, DomainError/NumericError -> 3.

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Arguments outside an operation's mathematical domain
// (non-fundamental discriminant, y <= 0, det != 1, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Evaluation at a pole (Gamma at non-positive integers, zeta at s = 1).
struct PoleError : DomainError {
  using DomainError::DomainError;
};

// Malformed or inconsistent input files.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truncation or quadrature could not reach the requested accuracy.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hyplab
