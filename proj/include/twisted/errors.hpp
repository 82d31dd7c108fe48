#pragma once

#include <stdexcept>
#include <string>

namespace twisted {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (poles, infeasible splits, unsupported
/// measures). The CLI maps these to exit code 2.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Violated caller contract, e.g. a bracket without a sign change.
class PreconditionError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Requested grid or problem exceeds the configured size limits.
class ResourceError : public DomainError {
public:
  using DomainError::DomainError;
};

/// A numerical procedure failed (no bracket, no convergence). Exit code 3.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// A series or quadrature could not reach its accuracy target.
class AccuracyError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace twisted
