#pragma once

#include <stdexcept>
#include <string>

namespace solvint {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input does not have the required shape (mixed moduli, bad dimensions,
/// schema violations).
class MalformedInput : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap would be exceeded.
class ResourceCap : public Error {
 public:
  using Error::Error;
};

/// The input lies outside the supported class (e.g. non-solvable groups).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; always a bug in the library.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A case-specific intersection formula was applied outside its case.
class DispatchError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Group-spec validation failure. `invariant()` names what failed, e.g.
/// "irreducibility", "faithfulness", "solvability".
class ValidationError : public MalformedInput {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : MalformedInput(invariant + ": " + detail), invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace solvint
