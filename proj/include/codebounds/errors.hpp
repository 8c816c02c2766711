#pragma once

#include <stdexcept>
#include <string>

namespace codebounds {

/// A value lies outside the mathematical domain of an operation
/// (negative logarithm argument, infeasible surface point, δ out of range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or unsupported input (parse failures, unsupported field size,
/// enumeration guards).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the surface gradient at boundary or branch-seam points.
class NondifferentiableError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace codebounds
