#pragma once

#include <stdexcept>
#include <string>

namespace roeflow {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the inputs was violated (bad shape, invalid metric, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An exhaustive computation refused to run because the input is above a size
// guard. The guard name is machine-readable so callers can surface it.
class SizeGuardError : public Error {
 public:
  SizeGuardError(std::string guard, const std::string& what)
      : Error(what), guard_(std::move(guard)) {}

  const std::string& guard() const noexcept { return guard_; }

 private:
  std::string guard_;
};

// A numerical self-check failed (non-convergence, violated identity).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace roeflow
