#pragma once

// Frobenius-manifold data attached to a potential F in flat coordinates
// t1..tr: the flat metric, WDVV residual, quasihomogeneity, intersection
// form, the quasihomogeneous flat pencil and its regularity tensor.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "frobkit/geometry.hpp"

namespace frobkit {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix antidiagonal(std::size_t rank);
RationalMatrix inverse(const RationalMatrix& m);  // throws SingularMatrixError
Matrix to_matrix(const RationalMatrix& m);

struct FrobeniusSpec {
  std::string name;
  std::size_t rank = 0;
  Rational charge;
  std::vector<Rational> degrees;          // d_i, with d_r = 1
  std::vector<Rational> euler_constants;  // b^j, zeros by default
  RationalMatrix metric;                  // Π, antidiagonal by default
  Expr potential;
  VarTable variables;

  /// E = (d_j t^j + b^j) ∂_j.
  [[nodiscard]] VectorField euler() const;
  /// e = ∂_r.
  [[nodiscard]] VectorField identity() const;
  [[nodiscard]] bool antidiagonal_metric() const;
  [[nodiscard]] bool diagonal_euler() const;
};

/// Π_{ij} = ∂_r ∂_i ∂_j F. Throws SpecError naming the first non-constant entry,
/// SingularMatrixError if Π is singular.
RationalMatrix flat_metric_from_potential(const Expr& f, std::size_t rank);

/// F minus the standard-form part ½ tr² t1 + ½ tr Σ_{1<i<r} ti t(r-i+1), differentiated
/// once in tr; zero iff F has the standard form with a remainder independent of tr.
Expr standard_form_defect(const Expr& f, std::size_t rank);

class WdvvResidual {
 public:
  explicit WdvvResidual(std::size_t rank) : rank_(rank), data_(rank * rank * rank * rank) {}
  [[nodiscard]] std::size_t rank() const { return rank_; }
  Expr& operator()(std::size_t i, std::size_t j, std::size_t q, std::size_t n) { return data_[index(i, j, q, n)]; }
  const Expr& operator()(std::size_t i, std::size_t j, std::size_t q, std::size_t n) const {
    return data_[index(i, j, q, n)];
  }
  [[nodiscard]] std::optional<std::array<std::size_t, 4>> first_nonzero() const;
  [[nodiscard]] bool is_zero() const { return !first_nonzero(); }

 private:
  [[nodiscard]] std::size_t index(std::size_t i, std::size_t j, std::size_t q, std::size_t n) const {
    return ((i * rank_ + j) * rank_ + q) * rank_ + n;
  }
  std::size_t rank_;
  std::vector<Expr> data_;
};

/// residual_{ijqn} = F_{ijk} η^{kp} F_{pqn} - F_{njk} η^{kp} F_{pqi}, η = Π⁻¹.
WdvvResidual wdvv_residual(const Expr& f, const RationalMatrix& pi);

struct QuasihomogeneityReport {
  bool quadratic = false;  // E F - (3-d) F is a quadratic polynomial
  bool strict = false;     // and it vanishes
  RationalMatrix a;
  std::vector<Rational> b;
  Rational c;
  Expr residual;   // E F - (3-d) F
  Expr offending;  // terms of the residual that are not quadratic
};

QuasihomogeneityReport quasihomogeneity_check(const Expr& f, const VectorField& euler, const Rational& charge);

/// Ω₂^{ij} = η^{ia} η^{jb} F_{abk} E^k. When `strict` is set, the shortcut form
/// is also computed and a mismatch throws std::logic_error.
ContraMetric intersection_form(const FrobeniusSpec& spec, bool strict);
/// (d - 1 + d_i + d_j) η^{ia} η^{jb} ∂_a ∂_b F.
Matrix intersection_form_shortcut(const FrobeniusSpec& spec);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  std::optional<RatExpr> witness;
  bool applicable = true;  // false: hypotheses not met, pass is meaningless
  bool claim = false;      // a stated identity tested as-is; a failure is reported, not fatal

  static CheckResult inapplicable(std::string name, std::string why) {
    return {std::move(name), false, std::move(why), std::nullopt, false};
  }
  [[nodiscard]] bool gating() const { return applicable && !claim; }
};

CheckResult matrix_check(std::string name, const Matrix& got, const Matrix& want, const std::string& what);
CheckResult vector_check(std::string name, const VectorField& got, const VectorField& want, const std::string& what);
CheckResult scalar_check(std::string name, const RatExpr& got, const RatExpr& want, const std::string& what);
bool all_passed(const std::vector<CheckResult>& checks);

/// Axioms of a quasihomogeneous flat pencil (Ω₂, Ω₁) with function τ and degree d.
/// E = ∇₂τ and e = ∇₁τ are derived here. With `flat_coordinates`, the chart is
/// assumed flat for Ω₁ with τ = t1 and the Christoffel identities of Ω₂ are checked too.
struct QfpmBundle {
  ContraMetric omega2;
  ContraMetric omega1;
  RatExpr tau;
  VectorField euler;
  VectorField identity;
  Rational degree;
  Christoffel gamma2;
  Christoffel gamma1;
  std::vector<CheckResult> checks;
  bool eligible = true;  // conjugation needs d != 1

  [[nodiscard]] bool passed() const;
  [[nodiscard]] const CheckResult* find(std::string_view name) const;
};

QfpmBundle check_qfpm(const ContraMetric& omega2, const ContraMetric& omega1, const RatExpr& tau, const Rational& degree,
                      bool flat_coordinates);

/// τ with ∂_j τ = Π_{jr}; t1 under the antidiagonal metric.
Expr tau_from_metric(const RationalMatrix& pi);
/// The alternative Π_{i1} t^i, reported alongside.
Expr tau_alternative(const RationalMatrix& pi);

/// Full assembly from a spec: Ω₁ = Π⁻¹, Ω₂ from the intersection form, τ, the
/// pencil axioms and agreement of ∇₂τ, ∇₁τ with the spec's E and ∂_r.
QfpmBundle assemble_qfpm(const FrobeniusSpec& spec);

struct RegularityTensor {
  Matrix r;  // r[i][j] = R_i^j
  RatExpr determinant;
  bool regular = false;
  std::vector<Rational> diagonal;  // d_i - d1/2, diagonal Euler fields only
  bool matches_diagonal = false;
};

/// R_i^j = (d-1)/2 δ_i^j + ∂_i E^j + Γ^j_{ik} E^k with Γ the connection of Ω₁.
RegularityTensor regularity(const ContraMetric& omega1, const VectorField& euler, const Rational& degree);
RegularityTensor regularity(const FrobeniusSpec& spec, const QfpmBundle& bundle);

struct DegreeDualityReport {
  bool pass = true;
  std::vector<std::string> violations;
};

/// Every nonzero Π⁻¹ entry (i, j) must have d_i + d_j = 2 - d.
DegreeDualityReport degree_duality(const FrobeniusSpec& spec);

}  // namespace frobkit
