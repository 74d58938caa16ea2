#pragma once

#include <stdexcept>
#include <string>

namespace multifid {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative routine failed to converge or produced garbage.
class NumericalFailure : public Error {
public:
  explicit NumericalFailure(const std::string& msg, double residual = 0.0)
      : Error(msg), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

// Input lies outside the mathematical domain of an operation
// (e.g. log of a matrix with a negative eigenvalue).
class DomainError : public Error {
public:
  using Error::Error;
};

// A typed value failed its invariants (non-unit trace, ragged blocks, ...).
class InvariantViolation : public Error {
public:
  using Error::Error;
};

// Malformed input text.  Line/column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace multifid
