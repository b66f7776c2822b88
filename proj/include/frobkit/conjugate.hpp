#pragma once

// Conjugate pencil, conjugate flat coordinates and potential, the inversion
// symmetry, and the checks tying them together.

#include <string>
#include <vector>

#include "frobkit/frobenius.hpp"

namespace frobkit {

/// d~1 = -d1, d~r = 1, d~i = di - d1 in between.
std::vector<Rational> transform_degrees(const std::vector<Rational>& degrees);

struct ConjugationData {
  RatExpr f;        // τ^{2/(1-d)}
  RatExpr f_prime;  // f'(τ)
  VectorField e_tilde;
  ContraMetric omega1_tilde;
  RatExpr tau_tilde;
  VectorField euler_tilde;
  Rational degree_tilde;
  std::vector<Rational> degrees_tilde;  // empty unless degrees were supplied
  QfpmBundle bundle;                    // axioms of (Ω₂, Ω̃₁, τ̃, d̃)
  RegularityTensor regularity;          // R of the original pencil
  RegularityTensor regularity_tilde;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const { return all_passed(checks) && bundle.passed(); }
};

/// Builds f, ẽ and Ω̃₁ both by the closed formula f Ω₁ - f'(E⊗e + e⊗E) and as
/// Lie_ẽ Ω₂, then checks the second Lie derivatives, the first column of Ω̃₁,
/// det Ω̃₁ = f^r det Ω₁, the conjugate pencil axioms and R̃ = -R.
/// Throws IneligibleError when d = 1 or e(τ) = 0, E(τ) = (1-d)τ fails.
ConjugationData conjugate_pencil(const QfpmBundle& bundle, const std::vector<Rational>& degrees = {});

/// Forward and inverse conjugate coordinates built from the degrees alone,
/// with no check of the hypotheses of the construction.
CoordinateMap conjugate_map_from_degrees(const std::vector<Rational>& degrees);
/// The closed-form Jacobian entries ∂s^i/∂t^j.
std::vector<std::vector<Expr>> conjugate_jacobian_closed_form(const std::vector<Rational>& degrees);

/// Validated conjugate coordinates: strict quasihomogeneity, antidiagonal Π,
/// diagonal Euler field, d != 1 and d_i != d1/2. Throws IneligibleError.
CoordinateMap conjugate_coordinates(const FrobeniusSpec& spec);

/// Inversion map z(t) and its closed-form inverse.
CoordinateMap inversion_map(std::size_t rank);

struct TransformResult {
  CoordinateMap map;
  Expr potential;         // in the target chart
  FrobeniusSpec target;   // potential, charge and degrees in the target chart
  ContraMetric metric;    // Ω₂ pushed to the target chart
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const { return all_passed(checks); }
};

/// The transform of F - ½ tr Σ ti t(r-i+1) by the power `weight` of t1, pulled
/// back through `map`, without any hypothesis checks.
Expr transformed_potential(const FrobeniusSpec& spec, const CoordinateMap& map, const Exponent& weight);

/// Conjugate potential (t1)^{-4/d1}(F - ½ tr Σ ti t(r-i+1)) in s, with checks on
/// WDVV, the flat metric, strict quasihomogeneity of charge 2-d and agreement
/// of the pushed Ω₂ with the intersection form of the result. When `pencil` is
/// given, Ω̃₁, ẽ, Ẽ and τ̃ are also pushed to s.
TransformResult conjugate_potential(const FrobeniusSpec& spec, const ConjugationData* pencil = nullptr);

/// Inversion potential (t1)^{-2}(F - ½ tr Π_ij ti tj) in z. Runs on non-strict specs.
TransformResult inversion_symmetry(const FrobeniusSpec& spec);

struct InvolutionReport {
  std::vector<CheckResult> checks;
  int pencil_sign = 1;  // ẽ̃ = pencil_sign · e

  [[nodiscard]] bool passed() const { return all_passed(checks); }
};

InvolutionReport involution_check(const FrobeniusSpec& spec);

struct EqualityReport {
  std::string mode;  // "exact" or "equivalent-structure, potentials differ"
  bool equal = false;
  bool equivalent_structure = false;
  Expr conjugate;  // formal conjugate potential in s
  Expr inversion;  // inversion potential, renamed z -> s
  Expr residual;   // inversion - conjugate
  std::vector<CheckResult> checks;

  [[nodiscard]] bool passed() const { return all_passed(checks); }
};

EqualityReport potential_equality_check(const FrobeniusSpec& spec);

}  // namespace frobkit
