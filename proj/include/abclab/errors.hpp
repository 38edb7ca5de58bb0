#pragma once

#include <stdexcept>
#include <string>

namespace abclab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown unit system or malformed constant set.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Field evaluated on (or within epsilon of) a source.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or integrator failed to meet its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree did not; signals a broken upstream computation.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A parameter violates a type invariant. `field()` names the offending key.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Scenario document is not well-formed.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace abclab
