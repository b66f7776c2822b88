#pragma once

// Truncated Taylor polynomials with exact rational coefficients. A Jet of
// order k at a point p holds the coefficients of f(p + h) up to total degree
// k in h; products truncate to the smaller order and each derivative drops
// one order. Used by the oracle to recompute identities numerically from
// derivatives of the inputs alone.

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "frobkit/ratexpr.hpp"

namespace frobkit {

/// Multi-index bookkeeping shared by all jets with the same variable count
/// and maximal order.
class JetSpace {
 public:
  static std::shared_ptr<const JetSpace> get(std::size_t vars, int max_order);

  [[nodiscard]] std::size_t vars() const { return vars_; }
  [[nodiscard]] int max_order() const { return max_order_; }
  [[nodiscard]] std::size_t size() const { return index_.size(); }
  [[nodiscard]] const std::vector<int>& multi_index(std::size_t k) const { return index_[k]; }
  [[nodiscard]] int degree(std::size_t k) const { return degree_[k]; }
  /// Slot of multi-index k + e_var, or npos past max_order.
  [[nodiscard]] std::size_t raise(std::size_t k, std::size_t var) const { return raise_[k][var]; }
  [[nodiscard]] std::size_t add(std::size_t a, std::size_t b) const { return add_[a][b]; }
  /// Number of slots with degree <= order (slots are sorted by degree).
  [[nodiscard]] std::size_t count(int order) const { return order < 0 ? 0 : count_[order]; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  JetSpace(std::size_t vars, int max_order);

 private:
  std::size_t vars_;
  int max_order_;
  std::vector<std::vector<int>> index_;
  std::vector<int> degree_;
  std::vector<std::vector<std::size_t>> raise_;
  std::vector<std::vector<std::size_t>> add_;
  std::vector<std::size_t> count_;
};

class Jet {
 public:
  Jet() = default;
  Jet(std::shared_ptr<const JetSpace> space, int order);
  static Jet constant(std::shared_ptr<const JetSpace> space, const Rational& value);
  /// The coordinate jet p_var + h_var.
  static Jet coordinate(std::shared_ptr<const JetSpace> space, std::size_t var, const Rational& value);

  [[nodiscard]] int order() const { return order_; }
  /// Throws std::logic_error when too many derivatives were taken for the seeded order.
  [[nodiscard]] const Rational& value() const;
  [[nodiscard]] const Rational& coefficient(std::size_t slot) const { return c_[slot]; }
  Rational& coefficient(std::size_t slot) { return c_[slot]; }
  [[nodiscard]] const std::shared_ptr<const JetSpace>& space() const { return space_; }

  [[nodiscard]] Jet derivative(std::size_t var) const;
  /// 1/f; throws DivisionByZero when the value vanishes.
  [[nodiscard]] Jet inverse() const;
  /// f^a; the value must have an exact root of the needed order.
  [[nodiscard]] Jet pow(const Rational& a) const;
  [[nodiscard]] bool is_zero() const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Rational& s);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) { return a *= Rational(-1); }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator*(Jet a, const Rational& s) { return a *= s; }
  friend Jet operator*(const Rational& s, Jet a) { return a *= s; }

 private:
  std::shared_ptr<const JetSpace> space_;
  int order_ = -1;
  std::vector<Rational> c_;
};

/// Symbolic derivatives of an expression up to a fixed order, ready to be
/// turned into jets at sample points.
class TaylorModel {
 public:
  TaylorModel(const RatExpr& f, std::size_t vars, int order);
  [[nodiscard]] Jet at(const Point& p) const;
  [[nodiscard]] int order() const { return order_; }

 private:
  struct Part {
    std::vector<Expr> derivatives;  // ∂^α g, indexed by jet slot
    int power;
  };
  std::shared_ptr<const JetSpace> space_;
  int order_;
  std::vector<Part> parts_;  // numerator (power 1) and denominator factors (negative powers)
};

using JetMatrix = std::vector<std::vector<Jet>>;
using JetVector = std::vector<Jet>;
/// (a, b, c) -> Γ^a_{bc} or Γ^{ab}_c depending on context.
using JetTensor3 = std::vector<std::vector<std::vector<Jet>>>;

JetMatrix jet_inverse(const JetMatrix& m);  // throws SingularMatrixError
Jet jet_determinant(const JetMatrix& m);
/// Γ^a_{bc} of the metric whose contravariant form is omega.
JetTensor3 jet_connection(const JetMatrix& omega);
/// Γ^{ij}_k = -Ω^{im} Γ^j_{mk}.
JetTensor3 jet_contravariant_christoffels(const JetMatrix& omega);
/// All components R^a_{bcd}, flattened.
std::vector<Jet> jet_riemann(const JetMatrix& omega);
JetMatrix jet_lie_metric(const JetMatrix& omega, const JetVector& x);
Jet jet_apply(const JetVector& x, const Jet& f);
JetVector jet_bracket(const JetVector& x, const JetVector& y);
/// Lie derivative of the δ (Christoffel) part of a PBHT along x.
JetTensor3 jet_lie_christoffel(const JetMatrix& omega, const JetTensor3& gamma, const JetVector& x);

}  // namespace frobkit
