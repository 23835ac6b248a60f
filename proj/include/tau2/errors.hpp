#pragma once

#include <stdexcept>
#include <string>

namespace tau2 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (files, flags, tables). Carries a 1-based line number
/// when the input is line oriented, 0 otherwise.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Two elements (or an element and a system) built over different presentations.
class PresentationMismatch : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured evaluation budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold for every valid input came out false.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace tau2
