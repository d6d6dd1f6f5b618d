#pragma once

#include <stdexcept>
#include <string>

namespace subspace {

/// Base of every error raised by the library. Callers that only need a
/// message can catch this; the CLI maps each subclass to an exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mathematically undefined input, e.g. the norm of zero.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent arguments (dimension mismatch, non-prime place,
/// bad rational literal).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A point lies on the support of a divisor or subscheme where a Weil
/// function is infinite.
class SupportError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Input belongs to a class the library has no closed form for.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A construction that should always succeed under its preconditions could
/// not find a witness.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace subspace
