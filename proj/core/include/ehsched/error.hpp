#pragma once

#include <stdexcept>
#include <string>

namespace ehsched {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (negative power,
/// time outside the curve horizon, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested quantity does not exist: no positive power solves the
/// rate-per-power equation, the data cannot be delivered in finite time, etc.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A waiting-phase start condition never holds before the horizon.
class WaitingNeverEndsError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

/// A structural invariant of a curve or scenario is violated. `invariant()`
/// names it (e.g. "monotonicity").
class ValidationError : public Error {
 public:
  ValidationError(std::string invariant, const std::string& detail)
      : Error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Malformed scenario text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& detail)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + detail
                       : detail),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace ehsched
