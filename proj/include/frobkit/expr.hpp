#pragma once

// Exact expression kernel.
//
// An Expr is a finite sum of rational multiples of monomials
//
//     x1^a * x2^n2 * ... * xk^nk * log(x1)^l * log(-1)^b
//
// where a is rational, the n_i are integers (possibly negative), and l, b are
// nonnegative. Variable 0 is the distinguished variable x1 of every chart;
// only it may carry a fractional exponent or a logarithm. log(-1) is a formal
// branch constant produced when substituting x1 -> -y1 inside log(x1); it is
// never normalised to a number.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frobkit/errors.hpp"
#include "frobkit/rational.hpp"

namespace frobkit {

inline constexpr std::size_t kMaxVariables = 10;

struct Monomial {
  Exponent lead;                                     // exponent of x1
  std::array<std::int32_t, kMaxVariables - 1> rest{};  // exponents of x2, x3, ...
  std::uint16_t logpow = 0;
  std::uint16_t branchpow = 0;

  [[nodiscard]] bool is_one() const;
  [[nodiscard]] bool has_transcendental() const { return logpow != 0 || branchpow != 0; }
  /// Exponent of variable `var` (0 = x1); only meaningful for var > 0 as an integer.
  [[nodiscard]] std::int32_t exponent(std::size_t var) const { return rest[var - 1]; }
  [[nodiscard]] Rational total_degree() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

class Expr {
 public:
  using Term = std::pair<Monomial, Rational>;

  Expr() = default;
  Expr(long value);  // NOLINT: integer literals promote implicitly
  Expr(const Rational& value);  // NOLINT

  static Expr variable(std::size_t index);
  static Expr term(const Monomial& m, const Rational& coefficient);
  static Expr log_lead();
  static Expr branch_constant();
  /// Builds from arbitrary terms; merges duplicates and drops zeros.
  static Expr from_terms(std::vector<Term> terms);

  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] std::optional<Rational> constant_value() const;
  [[nodiscard]] bool is_constant() const { return constant_value().has_value(); }
  [[nodiscard]] bool is_single_term() const { return terms_.size() == 1; }
  [[nodiscard]] bool has_transcendental() const;
  /// Coefficient of monomial m (zero if absent).
  [[nodiscard]] Rational coefficient(const Monomial& m) const;
  /// True iff no term uses variable `var`.
  [[nodiscard]] bool independent_of(std::size_t var) const;

  Expr& operator+=(const Expr& other);
  Expr& operator-=(const Expr& other);
  Expr& operator*=(const Expr& other);
  Expr& operator*=(const Rational& scalar);

  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator*(Expr a, const Rational& s) { return a *= s; }
  friend Expr operator*(const Rational& s, Expr a) { return a *= s; }
  friend Expr operator-(Expr a);

  friend bool operator==(const Expr&, const Expr&) = default;

 private:
  std::vector<Term> terms_;  // sorted by Monomial, no zero coefficients
};

/// Variable names of a chart; index 0 is the distinguished variable.
struct VarTable {
  std::vector<std::string> names;

  [[nodiscard]] std::size_t size() const { return names.size(); }
  [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;
  /// Chart with names prefix1..prefixN.
  static VarTable numbered(std::string_view prefix, std::size_t count);
  [[nodiscard]] VarTable with(std::string name) const;
};

Expr derive(const Expr& f, std::size_t var);

/// Power of an expression. Single terms accept any rational exponent subject
/// to the kernel closure (fractional powers only on x1, exact rational roots of
/// the coefficient, and (-c)^(p/q) = (-1)^p c^(p/q) for odd q). Sums accept
/// nonnegative integer exponents only.
Expr pow(const Expr& base, Exponent e);

/// Per-variable images for substitute(); variables without an image are left alone.
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::vector<Expr> images) : images_(std::move(images)) {}
  [[nodiscard]] const std::vector<Expr>& images() const { return images_; }

 private:
  std::vector<Expr> images_;
};

Expr substitute(const Expr& f, const Substitution& map);

/// Evaluation point. values[0] may be negative; any fractional power taken of
/// it must be an exact rational root (pick values[0] = rho^L).
struct Point {
  std::vector<Rational> values;
  Rational logval = 0;
  Rational branchval = 0;
};

Rational evaluate_exact(const Expr& f, const Point& point);

/// x^e under the same branch rules as evaluate_exact.
Rational power_value(const Rational& x, Exponent e);

/// Least common multiple of the denominators of all x1 exponents in f.
std::int64_t lead_denominator_lcm(const Expr& f);

/// True iff f is a polynomial of total degree <= 2 with nonnegative integer
/// exponents and no transcendental factors.
bool is_quadratic_polynomial(const Expr& f);

struct QuadraticComparison {
  bool equivalent = false;
  Expr residual;  // f - g
};

QuadraticComparison equals_mod_quadratic(const Expr& f, const Expr& g);

// Printing and parsing of the textual grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' exponent)?
//   base   := rational | ident | 'log' '(' ident ')' | 'log' '(' '-1' ')' | '(' expr ')'
//   exponent := ['-'] integer | '(' ['-'] rational ')'
std::string to_string(const Expr& f, const VarTable& vars);
Expr parse_expr(std::string_view text, const VarTable& vars);

}  // namespace frobkit
