#pragma once

#include <stdexcept>
#include <string>

namespace mucont {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates the documented precondition of an operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input data could not be parsed or names an invalid field.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A multifunction fails a continuity precondition; carries the label of an
/// argument where it fails.
class ContinuityError : public PreconditionError {
 public:
  ContinuityError(const std::string& what, std::string witness)
      : PreconditionError(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

/// An instance exceeds a configured size guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// A construction that is guaranteed to succeed did not. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mucont
