#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frobkit {

/// Malformed expression text. Column is 1-based within the parsed string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::runtime_error(what + " at column " + std::to_string(column)), column_(column) {}
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// An operation left the exact-expression closure: fractional exponent on a
/// non-distinguished variable, log of something other than x1, and similar.
class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A power or log whose real branch is ambiguous, e.g. (-1)^(1/2) or (a+b)^(1/2).
class BranchError : public DomainError {
  using DomainError::DomainError;
};

class DivisionByZero : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation preconditions that depend on the structure being studied
/// (charge 1, non-strict quasihomogeneity, d_i = d_1/2, ...).
class IneligibleError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SpecError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace frobkit
