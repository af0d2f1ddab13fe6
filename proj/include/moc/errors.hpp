#pragma once

#include <stdexcept>
#include <string>

namespace moc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed arguments outside an operation's contract.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input (rationals, vectors).
class ParseError : public UsageError {
 public:
  using UsageError::UsageError;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

// Series whose constant term is zero where a unit is required.
class NonUnitSeries : public Error {
 public:
  using Error::Error;
};

// u^r with u rational has no rational value.
class IrrationalScalarPower : public Error {
 public:
  using Error::Error;
};

// Coefficient requested beyond the truncation order.
class TruncationExceeded : public Error {
 public:
  using Error::Error;
};

// Identity parameters violating |alpha| = 2s+1 or the length constraints.
class InvalidInstance : public UsageError {
 public:
  using UsageError::UsageError;
};

}  // namespace moc
