#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobkit/expr.hpp"

namespace frobkit {

/// Quotient of Exprs. The denominator is kept as a product of powers of
/// normalised factors (monomial content and leading coefficient moved to the
/// numerator) so that sums over a shared denominator do not square it. No
/// polynomial gcd is attempted; equality is decided by cross-multiplication.
class RatExpr {
 public:
  using Factor = std::pair<Expr, int>;

  RatExpr() = default;
  RatExpr(Expr numerator);  // NOLINT: every Expr is a RatExpr
  RatExpr(long value) : RatExpr(Expr(value)) {}  // NOLINT
  RatExpr(const Rational& value) : RatExpr(Expr(value)) {}  // NOLINT

  static RatExpr quotient(const Expr& numerator, const Expr& denominator);

  [[nodiscard]] const Expr& numerator() const { return num_; }
  [[nodiscard]] const std::vector<Factor>& factors() const { return factors_; }
  [[nodiscard]] Expr denominator() const;
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_expr() const { return factors_.empty(); }
  /// The underlying Expr when the denominator is trivial.
  [[nodiscard]] std::optional<Expr> as_expr() const;
  [[nodiscard]] std::optional<Rational> constant_value() const;

  RatExpr& operator+=(const RatExpr& other);
  RatExpr& operator-=(const RatExpr& other);
  RatExpr& operator*=(const RatExpr& other);
  RatExpr& operator/=(const RatExpr& other);

  friend RatExpr operator+(RatExpr a, const RatExpr& b) { return a += b; }
  friend RatExpr operator-(RatExpr a, const RatExpr& b) { return a -= b; }
  friend RatExpr operator*(RatExpr a, const RatExpr& b) { return a *= b; }
  friend RatExpr operator/(RatExpr a, const RatExpr& b) { return a /= b; }
  friend RatExpr operator-(RatExpr a);

  friend bool operator==(const RatExpr& a, const RatExpr& b);

  /// In-place division by d^power, recording d's primitive part as a factor.
  void divide_by(const Expr& d, int power);

 private:
  void cancel_trivial();

  Expr num_;
  std::vector<Factor> factors_;
};

RatExpr derive(const RatExpr& f, std::size_t var);
RatExpr substitute(const RatExpr& f, const Substitution& map);
Rational evaluate_exact(const RatExpr& f, const Point& point);
std::int64_t lead_denominator_lcm(const RatExpr& f);
std::string to_string(const RatExpr& f, const VarTable& vars);

}  // namespace frobkit
