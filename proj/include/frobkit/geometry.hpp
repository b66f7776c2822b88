#pragma once

// Contravariant metric calculus over RatExpr. All objects live in a chart
// whose variables are 0..rank-1; index conventions follow the usual upper
// (contravariant) / lower (covariant) placement, written out per function.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "frobkit/ratexpr.hpp"

namespace frobkit {

using Matrix = std::vector<std::vector<RatExpr>>;
using VectorField = std::vector<RatExpr>;

Matrix zero_matrix(std::size_t rank);
Matrix to_matrix(const std::vector<std::vector<Expr>>& entries);
bool is_zero(const Matrix& m);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const RatExpr& s, const Matrix& m);
/// First index (i, j) where a and b differ, if any.
std::optional<std::array<std::size_t, 2>> first_difference(const Matrix& a, const Matrix& b);

RatExpr determinant(const Matrix& m);
Matrix adjugate(const Matrix& m);

/// rank x rank x rank array. As a Christoffel symbol, (i, j, k) holds Γ^{ij}_k;
/// as a connection of the second kind, (a, b, c) holds Γ^a_{bc}.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t rank) : rank_(rank), data_(rank * rank * rank) {}

  [[nodiscard]] std::size_t rank() const { return rank_; }
  RatExpr& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * rank_ + j) * rank_ + k]; }
  const RatExpr& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * rank_ + j) * rank_ + k];
  }
  [[nodiscard]] bool is_zero() const;
  /// First index where the two differ.
  [[nodiscard]] std::optional<std::array<std::size_t, 3>> first_difference(const Tensor3& other) const;

  friend Tensor3 operator+(const Tensor3& a, const Tensor3& b);
  friend Tensor3 operator*(const RatExpr& s, const Tensor3& t);
  friend bool operator==(const Tensor3& a, const Tensor3& b) { return !a.first_difference(b); }

 private:
  std::size_t rank_ = 0;
  std::vector<RatExpr> data_;
};

using Christoffel = Tensor3;

/// Symmetric contravariant metric Ω^{ij}.
class ContraMetric {
 public:
  /// Throws SpecError if the matrix is not square or not symmetric.
  explicit ContraMetric(Matrix entries);

  [[nodiscard]] std::size_t rank() const { return entries_.size(); }
  [[nodiscard]] const Matrix& entries() const { return entries_; }
  const RatExpr& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }

 private:
  Matrix entries_;
};

/// Covariant inverse g_{ij} = adj(Ω)/det(Ω). Throws SingularMatrixError.
Matrix covariant_inverse(const ContraMetric& omega);

/// Levi-Civita connection of the covariant inverse, Γ^a_{bc}.
Tensor3 connection(const ContraMetric& omega);

/// Γ^{ij}_k = -Ω^{im} Γ^j_{mk}.
Christoffel christoffels(const ContraMetric& omega);

struct FlatnessReport {
  bool flat = true;
  std::array<std::size_t, 4> index{};  // (a, b, c, d) of R^a_{bcd} when not flat
  RatExpr component;
};

/// Full Riemann tensor R^a_{bcd} of the covariant inverse; stops at the first nonzero component.
FlatnessReport flatness(const ContraMetric& omega);
bool is_flat(const ContraMetric& omega);

/// Vector field acting on a function, X^s ∂_s f.
RatExpr apply(const VectorField& x, const RatExpr& f);
/// [X, Y]^i = X^s ∂_s Y^i - Y^s ∂_s X^i.
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// δ'-coefficient of Lie_X of the bracket with metric part Ω:
/// X^s ∂_s Ω^{ij} - Ω^{sj} ∂_s X^i - Ω^{is} ∂_s X^j.
Matrix lie_metric(const Matrix& omega, const VectorField& x);

struct PbhtPair {
  Matrix metric;      // δ' coefficients
  Tensor3 christoffel;  // δ coefficients, (i, j, k) at u_x^k
};

/// Lie derivative of the bracket (Ω, Γ) along X, both coefficient families.
PbhtPair lie_pbht(const Matrix& omega, const Christoffel& gamma, const VectorField& x);

struct PencilReport {
  bool flat = false;
  bool additive = false;
  std::string failure;  // empty when both hold
  RatExpr witness;
};

/// Flatness of Ω₂ + λΩ₁ and additivity of its Christoffels, with λ a fresh
/// variable in slot rank.
PencilReport pencil_check(const ContraMetric& omega2, const ContraMetric& omega1);

/// X^i = Ω^{ij} ∂_j τ.
VectorField gradient(const RatExpr& tau, const Matrix& omega);

/// Change of chart t -> s with a closed-form inverse. forward[i] is s^i
/// written in t, inverse[i] is t^i written in s; both compositions are checked
/// to be the identity at construction (SpecError otherwise).
class CoordinateMap {
 public:
  CoordinateMap(std::vector<Expr> forward, std::vector<Expr> inverse);

  [[nodiscard]] std::size_t rank() const { return forward_.size(); }
  [[nodiscard]] const std::vector<Expr>& forward() const { return forward_; }
  [[nodiscard]] const std::vector<Expr>& inverse() const { return inverse_; }
  /// J^i_j = ∂s^i/∂t^j, in t.
  [[nodiscard]] const std::vector<std::vector<Expr>>& jacobian() const { return jacobian_; }
  [[nodiscard]] CoordinateMap inverted() const { return {inverse_, forward_}; }

 private:
  std::vector<Expr> forward_;
  std::vector<Expr> inverse_;
  std::vector<std::vector<Expr>> jacobian_;
};

/// Metric: (J Ω Jᵀ)(t(s)). Vector field: (J X)(t(s)). Scalar: f(t(s)).
Matrix pushforward(const Matrix& omega, const CoordinateMap& map);
VectorField pushforward(const VectorField& x, const CoordinateMap& map);
RatExpr pushforward(const RatExpr& f, const CoordinateMap& map);

}  // namespace frobkit
