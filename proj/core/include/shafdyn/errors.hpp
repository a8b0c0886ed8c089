#ifndef SHAFDYN_ERRORS_HPP
#define SHAFDYN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shafdyn {

/// Input violates a mathematical precondition (zero valuation argument,
/// dimension mismatch, vanishing resultant, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Text or JSON input does not follow the documented grammar.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A computation was refused because it would exceed a configured cap.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The operation is only implemented for a restricted family (P^1 only,
/// odd maps only, ...).
struct UnsupportedError : DomainError {
  using DomainError::DomainError;
};

/// Not enough data to reach a verdict; distinct from an empty answer.
struct InconclusiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace shafdyn

#endif  // SHAFDYN_ERRORS_HPP
