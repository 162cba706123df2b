#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pbrel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LiteralNotPresent : public Error {
 public:
  using Error::Error;
};

class PivotNotOpposed : public Error {
 public:
  using Error::Error;
};

/// Divisor or multiplier below one, malformed configuration values, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IncompleteAssignment : public Error {
 public:
  using Error::Error;
};

/// The exact subset-sum oracle refuses tables larger than its cell budget.
class OracleCapacityExceeded : public Error {
 public:
  using Error::Error;
};

/// A solver invariant that must hold by construction was violated.
class InternalInvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pbrel
