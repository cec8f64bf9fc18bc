#pragma once

#include <stdexcept>
#include <string>

namespace sftb {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: malformed files, out-of-range arguments, violated
/// preconditions. The CLI maps this family to exit status 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A transition matrix entry outside {0,1}, or a non-square / too small matrix.
class InvalidMatrixError : public InputError {
 public:
  using InputError::InputError;
};

/// A row or column of zeros: some symbol has no admissible continuation.
class DegenerateMatrixError : public InputError {
 public:
  using InputError::InputError;
};

class NotPrimitiveError : public InputError {
 public:
  using InputError::InputError;
};

/// A resource guard tripped (word enumeration or eigensolver ceiling).
class CeilingError : public InputError {
 public:
  using InputError::InputError;
};

/// Inadmissible word, out-of-range symbol, bad parameter value.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what), residual_(last_residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// An invariant that theory guarantees was violated numerically
/// (e.g. a measure with entropy above the Perron bound).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace sftb
