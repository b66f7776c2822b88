#include "frobkit/conjugate.hpp"

#include <stdexcept>

namespace frobkit {

namespace {

Expr var(std::size_t i) { return Expr::variable(i); }

Expr power(const Expr& base, const Rational& e) { return pow(base, Exponent(e)); }

// Σ_{1<i<r} x_i x_{r-i+1} over the middle slots of a chart.
Expr middle_sum(const std::vector<Expr>& x) {
  const std::size_t r = x.size();
  Expr sum;
  for (std::size_t i = 1; i + 1 < r; ++i) sum += x[i] * x[r - 1 - i];
  return sum;
}

std::vector<Expr> chart(std::size_t rank) {
  std::vector<Expr> x;
  for (std::size_t i = 0; i < rank; ++i) x.push_back(var(i));
  return x;
}

FrobeniusSpec target_spec(const FrobeniusSpec& spec, std::string suffix, const std::string& prefix, Expr potential) {
  FrobeniusSpec t;
  t.name = spec.name + suffix;
  t.rank = spec.rank;
  t.charge = 2 - spec.charge;
  t.degrees = transform_degrees(spec.degrees);
  t.euler_constants.assign(spec.rank, Rational(0));
  t.metric = antidiagonal(spec.rank);
  t.potential = std::move(potential);
  t.variables = VarTable::numbered(prefix, spec.rank);
  return t;
}

void require_antidiagonal(const FrobeniusSpec& spec) {
  if (!spec.antidiagonal_metric()) throw IneligibleError("metric is not antidiagonal");
  if (!spec.diagonal_euler()) throw IneligibleError("Euler field has constant parts");
}

CheckResult target_checks_flat(const FrobeniusSpec& t) {
  CheckResult c{"target_flat_metric", true, "third derivatives along the last coordinate give the antidiagonal metric",
                std::nullopt};
  try {
    if (flat_metric_from_potential(t.potential, t.rank) != antidiagonal(t.rank)) {
      c.pass = false;
      c.detail = "flat metric of the transformed potential is not antidiagonal";
    }
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = e.what();
  }
  return c;
}

CheckResult wdvv_check(const FrobeniusSpec& t) {
  WdvvResidual w = wdvv_residual(t.potential, t.metric);
  CheckResult c{"target_wdvv", true, "WDVV residual of the transformed potential vanishes", std::nullopt};
  if (auto i = w.first_nonzero()) {
    c.pass = false;
    c.detail = "WDVV residual nonzero at (" + std::to_string((*i)[0] + 1) + "," + std::to_string((*i)[1] + 1) + "," +
               std::to_string((*i)[2] + 1) + "," + std::to_string((*i)[3] + 1) + ")";
    c.witness = RatExpr(w((*i)[0], (*i)[1], (*i)[2], (*i)[3]));
  }
  return c;
}

}  // namespace

std::vector<Rational> transform_degrees(const std::vector<Rational>& degrees) {
  const std::size_t r = degrees.size();
  std::vector<Rational> out(r);
  for (std::size_t i = 0; i < r; ++i) out[i] = degrees[i] - degrees[0];
  out[0] = -degrees[0];
  out[r - 1] = 1;
  return out;
}

ConjugationData conjugate_pencil(const QfpmBundle& bundle, const std::vector<Rational>& degrees) {
  const Rational d = bundle.degree;
  if (d == 1) throw IneligibleError("charge = 1");
  const std::size_t n = bundle.omega2.rank();
  const VectorField& E = bundle.euler;
  const VectorField& e = bundle.identity;
  if (!apply(e, bundle.tau).is_zero()) throw IneligibleError("e(tau) is not zero");
  if (!(apply(E, bundle.tau) == RatExpr(1 - d) * bundle.tau)) throw IneligibleError("E(tau) is not (1-d) tau");
  auto tau = bundle.tau.as_expr();
  if (!tau) throw IneligibleError("tau is not a polynomial expression");

  const Rational a = 2 / (1 - d);
  ConjugationData c{RatExpr(power(*tau, a)),
                    RatExpr(Expr(a) * power(*tau, a - 1)),
                    {},
                    bundle.omega1,
                    -bundle.tau,
                    {},
                    2 - d,
                    degrees.empty() ? std::vector<Rational>{} : transform_degrees(degrees),
                    bundle,
                    {},
                    {},
                    {}};
  c.e_tilde.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.e_tilde[i] = c.f * e[i];

  Matrix closed = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      closed[i][j] = c.f * bundle.omega1(i, j) - c.f_prime * (E[i] * e[j] + e[i] * E[j]);
  Matrix lie = lie_metric(bundle.omega2.entries(), c.e_tilde);
  c.checks.push_back(matrix_check("omega1_tilde_closed_form", closed, lie, "f Omega1 - f'(E e + e E) = Lie_e~ Omega2"));
  c.omega1_tilde = ContraMetric(lie);

  c.checks.push_back(matrix_check("lie2_metric", lie_metric(lie, c.e_tilde), zero_matrix(n), "Lie_e~^2 Omega2 = 0"));

  PbhtPair once = lie_pbht(bundle.omega2.entries(), bundle.gamma2, c.e_tilde);
  PbhtPair twice = lie_pbht(once.metric, once.christoffel, c.e_tilde);
  Christoffel gamma_tilde = christoffels(c.omega1_tilde);
  CheckResult g{"lie_pbht_christoffels", true, "delta part of Lie_e~ {,} is the Christoffel symbol of Omega1~",
                std::nullopt};
  if (auto i = once.christoffel.first_difference(gamma_tilde)) {
    g.pass = false;
    g.witness = once.christoffel((*i)[0], (*i)[1], (*i)[2]) - gamma_tilde((*i)[0], (*i)[1], (*i)[2]);
  }
  c.checks.push_back(std::move(g));
  c.checks.push_back(matrix_check("lie2_pbht_metric", twice.metric, zero_matrix(n), "delta' part of Lie_e~^2 {,} = 0"));
  CheckResult z{"lie2_pbht_christoffel", twice.christoffel.is_zero(), "delta part of Lie_e~^2 {,} = 0", std::nullopt};
  c.checks.push_back(std::move(z));

  if (bundle.tau == RatExpr(var(0))) {
    Matrix col = zero_matrix(n);
    Matrix want = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i) {
      col[i][0] = c.omega1_tilde(i, 0);
      want[i][0] = i + 1 == n ? -c.f : RatExpr();
    }
    c.checks.push_back(matrix_check("omega1_tilde_first_column", col, want, "Omega1~^{i1} = -f delta^i_r"));
  } else {
    c.checks.push_back(CheckResult::inapplicable("omega1_tilde_first_column", "tau is not the first coordinate"));
  }

  RatExpr fr(1);
  for (std::size_t i = 0; i < n; ++i) fr *= c.f;
  c.checks.push_back(scalar_check("omega1_tilde_determinant", determinant(c.omega1_tilde.entries()),
                                  fr * determinant(bundle.omega1.entries()), "det Omega1~ = f^r det Omega1"));

  c.bundle = check_qfpm(bundle.omega2, c.omega1_tilde, c.tau_tilde, c.degree_tilde, false);
  c.euler_tilde = c.bundle.euler;
  VectorField minus_e(n);
  for (std::size_t i = 0; i < n; ++i) minus_e[i] = -E[i];
  c.checks.push_back(vector_check("euler_tilde", c.euler_tilde, minus_e, "grad_2 tau~ = -E"));
  c.checks.push_back(vector_check("e_tilde_gradient", c.bundle.identity, c.e_tilde, "grad_1~ tau~ = f e"));

  c.regularity = regularity(bundle.omega1, E, d);
  c.regularity_tilde = regularity(c.omega1_tilde, c.euler_tilde, c.degree_tilde);
  CheckResult neg = matrix_check("regularity_negated", c.regularity_tilde.r, RatExpr(-1) * c.regularity.r, "R~ = -R");
  neg.claim = true;
  if (!neg.pass)
    neg.detail += "; the step grad~_1 E = grad_1 E does not hold, R~ and -R differ (see README)";
  c.checks.push_back(std::move(neg));
  CheckResult reg{"regularity_preserved", c.regularity.regular == c.regularity_tilde.regular,
                  std::string("conjugate regular iff original regular: original ") +
                      (c.regularity.regular ? "regular" : "singular") + ", conjugate " +
                      (c.regularity_tilde.regular ? "regular" : "singular"),
                  std::nullopt};
  reg.claim = true;
  c.checks.push_back(std::move(reg));
  return c;
}

CoordinateMap conjugate_map_from_degrees(const std::vector<Rational>& degrees) {
  const std::size_t r = degrees.size();
  if (r < 2) throw IneligibleError("rank < 2");
  const Rational d1 = degrees[0];
  if (d1 == 0) throw IneligibleError("d1 = 0 (charge = 1)");
  std::vector<Expr> t = chart(r);
  std::vector<Expr> fwd(r), inv(r);
  fwd[0] = -t[0];
  for (std::size_t i = 1; i + 1 < r; ++i) fwd[i] = t[i] * power(t[0], (d1 - 2 * degrees[i]) / d1);
  fwd[r - 1] = t[r - 1] * power(t[0], -2 / d1) + Rational(1, 2) * middle_sum(t) * power(t[0], -2 / d1 - 1);

  const Expr minus_s1 = -t[0];
  inv[0] = minus_s1;
  for (std::size_t i = 1; i + 1 < r; ++i) inv[i] = t[i] * power(minus_s1, (2 * degrees[i] - d1) / d1);
  inv[r - 1] = power(minus_s1, 2 / d1) * t[r - 1] - Rational(1, 2) * power(minus_s1, -1) * middle_sum(inv);
  return {fwd, inv};
}

std::vector<std::vector<Expr>> conjugate_jacobian_closed_form(const std::vector<Rational>& degrees) {
  const std::size_t r = degrees.size();
  const Rational d1 = degrees[0];
  std::vector<Expr> t = chart(r);
  std::vector<std::vector<Expr>> J(r, std::vector<Expr>(r));
  J[0][0] = Expr(-1);
  for (std::size_t i = 1; i + 1 < r; ++i) {
    J[i][0] = Expr((d1 - 2 * degrees[i]) / d1) * t[i] * power(t[0], -2 * degrees[i] / d1);
    J[i][i] = power(t[0], (d1 - 2 * degrees[i]) / d1);
  }
  J[r - 1][0] = Expr((-2 - d1) / (2 * d1)) * middle_sum(t) * power(t[0], -2 / d1 - 2) -
                Expr(2 / d1) * t[r - 1] * power(t[0], -2 / d1 - 1);
  for (std::size_t i = 1; i + 1 < r; ++i) J[r - 1][i] = t[r - 1 - i] * power(t[0], -2 / d1 - 1);
  J[r - 1][r - 1] = power(t[0], -2 / d1);
  return J;
}

CoordinateMap conjugate_coordinates(const FrobeniusSpec& spec) {
  require_antidiagonal(spec);
  if (spec.charge == 1) throw IneligibleError("charge = 1");
  for (std::size_t i = 0; i < spec.rank; ++i)
    if (spec.degrees[i] == spec.degrees[0] / 2)
      throw IneligibleError("d_" + std::to_string(i + 1) + " = d_1/2, the conjugate pencil is not regular");
  if (!quasihomogeneity_check(spec.potential, spec.euler(), spec.charge).strict)
    throw IneligibleError("quasihomogeneity is not strict");
  CoordinateMap map = conjugate_map_from_degrees(spec.degrees);
  if (map.jacobian() != conjugate_jacobian_closed_form(spec.degrees))
    throw std::logic_error("conjugate Jacobian disagrees with its closed form");
  return map;
}

CoordinateMap inversion_map(std::size_t rank) {
  std::vector<Expr> t = chart(rank);
  const std::size_t r = rank;
  const Expr inv_t1 = pow(t[0], Exponent(-1));
  std::vector<Expr> fwd(r), inv(r);
  fwd[0] = -inv_t1;
  inv[0] = -inv_t1;
  for (std::size_t k = 1; k + 1 < r; ++k) {
    fwd[k] = t[k] * inv_t1;
    inv[k] = -t[k] * inv_t1;
  }
  fwd[r - 1] = t[r - 1] + Rational(1, 2) * middle_sum(t) * inv_t1;
  inv[r - 1] = t[r - 1] + Rational(1, 2) * middle_sum(t) * inv_t1;
  return {fwd, inv};
}

Expr transformed_potential(const FrobeniusSpec& spec, const CoordinateMap& map, const Exponent& weight) {
  std::vector<Expr> t = chart(spec.rank);
  Expr full;
  for (std::size_t i = 0; i < spec.rank; ++i) full += t[i] * t[spec.rank - 1 - i];
  Expr g = pow(t[0], weight) * (spec.potential - Rational(1, 2) * t[spec.rank - 1] * full);
  return substitute(g, Substitution(map.inverse()));
}

TransformResult conjugate_potential(const FrobeniusSpec& spec, const ConjugationData* pencil) {
  CoordinateMap map = conjugate_coordinates(spec);
  Expr f = transformed_potential(spec, map, Exponent(-4 / spec.degrees[0]));
  FrobeniusSpec target = target_spec(spec, "~", "s", f);
  ContraMetric pushed(pushforward(intersection_form(spec, true).entries(), map));
  TransformResult out{map, f, target, pushed, {}};
  out.checks.push_back({"jacobian_closed_form", true, "Jacobian of the s-map matches its closed form", std::nullopt});
  out.checks.push_back(target_checks_flat(target));
  out.checks.push_back(wdvv_check(target));
  QuasihomogeneityReport q = quasihomogeneity_check(f, target.euler(), target.charge);
  CheckResult qc{"target_strict_quasihomogeneity", q.strict, "E~ F~ = (3 - d~) F~ with d~ = 2 - d", std::nullopt};
  if (!q.strict) qc.witness = RatExpr(q.residual);
  out.checks.push_back(std::move(qc));
  out.checks.push_back(matrix_check("target_intersection_form", intersection_form(target, false).entries(),
                                    pushed.entries(), "intersection form of F~ equals Omega2 pushed to s"));
  if (pencil) {
    out.checks.push_back(matrix_check("omega1_tilde_in_s", pushforward(pencil->omega1_tilde.entries(), map),
                                      to_matrix(antidiagonal(spec.rank)), "Omega1~ is antidiagonal in s"));
    out.checks.push_back(
        vector_check("e_tilde_in_s", pushforward(pencil->e_tilde, map), target.identity(), "e~ = d/ds_r"));
    out.checks.push_back(vector_check("euler_tilde_in_s", pushforward(pencil->euler_tilde, map), target.euler(),
                                      "E~ = d~_i s_i d/ds_i"));
    out.checks.push_back(
        scalar_check("tau_tilde_in_s", pushforward(pencil->tau_tilde, map), RatExpr(var(0)), "tau~ = s1"));
  }
  return out;
}

TransformResult inversion_symmetry(const FrobeniusSpec& spec) {
  require_antidiagonal(spec);
  CoordinateMap map = inversion_map(spec.rank);
  Expr f = transformed_potential(spec, map, Exponent(-2));
  FrobeniusSpec target = target_spec(spec, "^", "z", f);
  ContraMetric pushed(pushforward(intersection_form(spec, false).entries(), map));
  TransformResult out{map, f, target, pushed, {}};
  out.checks.push_back(target_checks_flat(target));
  out.checks.push_back(wdvv_check(target));
  QuasihomogeneityReport q = quasihomogeneity_check(f, target.euler(), target.charge);
  CheckResult qc{"target_quasihomogeneity", q.quadratic,
                 q.strict ? "E^ F^ = (3 - d^) F^" : "E^ F^ = (3 - d^) F^ + quadratic", std::nullopt};
  if (!q.strict) qc.witness = RatExpr(q.residual);
  out.checks.push_back(std::move(qc));
  return out;
}

InvolutionReport involution_check(const FrobeniusSpec& spec) {
  InvolutionReport rep;
  auto rename = [](FrobeniusSpec s) {
    s.variables = VarTable::numbered("t", s.rank);
    return s;
  };

  try {
    TransformResult once = conjugate_potential(spec);
    TransformResult twice = conjugate_potential(rename(once.target));
    rep.checks.push_back(scalar_check("double_conjugate_potential", RatExpr(twice.potential), RatExpr(spec.potential),
                                      "conjugating the potential twice returns F"));
  } catch (const IneligibleError& e) {
    rep.checks.push_back(CheckResult::inapplicable("double_conjugate_potential", e.what()));
  }

  try {
    TransformResult once = inversion_symmetry(spec);
    TransformResult twice = inversion_symmetry(rename(once.target));
    QuadraticComparison q = equals_mod_quadratic(twice.potential, spec.potential);
    CheckResult c{"double_inversion_potential", q.equivalent,
                  q.residual.is_zero() ? "inverting twice returns F exactly"
                                       : "inverting twice returns F up to a quadratic polynomial",
                  std::nullopt};
    if (!q.residual.is_zero()) c.witness = RatExpr(q.residual);
    rep.checks.push_back(std::move(c));
  } catch (const IneligibleError& e) {
    rep.checks.push_back(CheckResult::inapplicable("double_inversion_potential", e.what()));
  }

  rep.checks.push_back({"double_degree_transform", transform_degrees(transform_degrees(spec.degrees)) == spec.degrees,
                        "applying the degree transform twice is the identity", std::nullopt});

  try {
    QfpmBundle b = assemble_qfpm(spec);
    ConjugationData once = conjugate_pencil(b, spec.degrees);
    ConjugationData twice = conjugate_pencil(once.bundle, once.degrees_tilde);
    const std::size_t n = spec.rank;
    CheckResult c{"double_conjugate_pencil", false, "", std::nullopt};
    for (int sign : {1, -1}) {
      VectorField se(n);
      for (std::size_t i = 0; i < n; ++i) se[i] = RatExpr(sign) * b.identity[i];
      if (twice.e_tilde == se && !first_difference(twice.omega1_tilde.entries(), RatExpr(sign) * b.omega1.entries())) {
        c.pass = true;
        rep.pencil_sign = sign;
      }
    }
    c.detail = !c.pass          ? "conjugating the pencil twice does not return (Omega2, +-Omega1)"
               : rep.pencil_sign == 1 ? "conjugating the pencil twice returns (Omega2, Omega1)"
                                      : "conjugating the pencil twice returns (Omega2, -Omega1), e~~ = -e";
    rep.checks.push_back(std::move(c));
  } catch (const IneligibleError& e) {
    rep.checks.push_back(CheckResult::inapplicable("double_conjugate_pencil", e.what()));
  }
  return rep;
}

EqualityReport potential_equality_check(const FrobeniusSpec& spec) {
  EqualityReport rep;
  TransformResult inv = inversion_symmetry(spec);
  rep.inversion = inv.potential;
  bool strict = true;
  try {
    conjugate_coordinates(spec);
  } catch (const IneligibleError&) {
    strict = false;
  }
  if (strict) {
    rep.conjugate = conjugate_potential(spec).potential;
    rep.residual = rep.inversion - rep.conjugate;
    rep.equal = rep.residual.is_zero();
    rep.equivalent_structure = rep.equal;
    rep.mode = "exact";
    CheckResult c{"conjugate_equals_inversion", rep.equal, "conjugate potential equals the inversion potential",
                  std::nullopt};
    if (!rep.equal) c.witness = RatExpr(rep.residual);
    rep.checks.push_back(std::move(c));
    return rep;
  }

  // Outside the hypotheses: compare the formal conjugate potential and the
  // structures they define instead.
  try {
    CoordinateMap map = conjugate_map_from_degrees(spec.degrees);
    rep.conjugate = transformed_potential(spec, map, Exponent(-4 / spec.degrees[0]));
    rep.residual = rep.inversion - rep.conjugate;
    rep.equal = rep.residual.is_zero();
    FrobeniusSpec renamed = inv.target;
    renamed.variables = VarTable::numbered("s", spec.rank);
    Matrix pushed = pushforward(intersection_form(spec, false).entries(), map);
    auto diff = first_difference(intersection_form(renamed, false).entries(), pushed);
    rep.equivalent_structure = !diff;
    rep.mode = rep.equal ? "exact" : rep.equivalent_structure ? "equivalent-structure, potentials differ"
                                                              : "potentials differ";
    CheckResult s{"inversion_structure_matches_conjugate", rep.equivalent_structure,
                  "intersection form of the inversion potential equals Omega2 pushed to the conjugate chart",
                  std::nullopt};
    if (diff) s.witness = intersection_form(renamed, false).entries()[(*diff)[0]][(*diff)[1]] - pushed[(*diff)[0]][(*diff)[1]];
    rep.checks.push_back(std::move(s));
    CheckResult e = CheckResult::inapplicable(
        "conjugate_equals_inversion",
        rep.equal ? "potentials agree although the hypotheses do not hold"
                  : "hypotheses not met (non-strict or d_i = d1/2); the formal conjugate potential differs from the "
                    "inversion potential by the witness");
    if (!rep.equal) e.witness = RatExpr(rep.residual);
    rep.checks.push_back(std::move(e));
  } catch (const DomainError& e) {
    rep.mode = "not comparable";
    rep.checks.push_back(CheckResult::inapplicable("conjugate_equals_inversion", e.what()));
  } catch (const IneligibleError& e) {
    rep.mode = "not comparable";
    rep.checks.push_back(CheckResult::inapplicable("conjugate_equals_inversion", e.what()));
  }
  return rep;
}

}  // namespace frobkit
