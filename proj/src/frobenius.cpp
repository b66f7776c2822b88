#include "frobkit/frobenius.hpp"

#include <stdexcept>

namespace frobkit {

namespace {

std::string idx(std::initializer_list<std::size_t> list) {
  std::string out;
  for (std::size_t i : list) {
    if (!out.empty()) out += ",";
    out += std::to_string(i + 1);
  }
  return out;
}

Expr as_polynomial_field(const RatExpr& x) {
  auto e = x.as_expr();
  if (!e) throw SpecError("vector field component is not a polynomial expression");
  return *e;
}

Expr apply_expr(const VectorField& x, const Expr& f) {
  Expr out;
  for (std::size_t s = 0; s < x.size(); ++s)
    if (!x[s].is_zero()) out += as_polynomial_field(x[s]) * derive(f, s);
  return out;
}

// F_{ijk} for all index triples, computed once per sorted triple.
std::vector<Expr> third_derivatives(const Expr& f, std::size_t n) {
  std::vector<Expr> out(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    Expr fi = derive(f, i);
    for (std::size_t j = i; j < n; ++j) {
      Expr fij = derive(fi, j);
      for (std::size_t k = j; k < n; ++k) {
        Expr v = derive(fij, k);
        std::array<std::size_t, 3> p{i, j, k};
        do {
          out[(p[0] * n + p[1]) * n + p[2]] = v;
        } while (std::next_permutation(p.begin(), p.end()));
      }
    }
  }
  return out;
}

}  // namespace

CheckResult matrix_check(std::string name, const Matrix& got, const Matrix& want, const std::string& what) {
  CheckResult c{std::move(name), true, what, std::nullopt};
  if (auto d = first_difference(got, want)) {
    c.pass = false;
    c.detail = what + ": first mismatch at (" + idx({(*d)[0], (*d)[1]}) + ")";
    c.witness = got[(*d)[0]][(*d)[1]] - want[(*d)[0]][(*d)[1]];
  }
  return c;
}

CheckResult vector_check(std::string name, const VectorField& got, const VectorField& want, const std::string& what) {
  CheckResult c{std::move(name), true, what, std::nullopt};
  for (std::size_t i = 0; i < got.size(); ++i)
    if (!(got[i] == want[i])) {
      c.pass = false;
      c.detail = what + ": first mismatch in component " + idx({i});
      c.witness = got[i] - want[i];
      break;
    }
  return c;
}

CheckResult scalar_check(std::string name, const RatExpr& got, const RatExpr& want, const std::string& what) {
  CheckResult c{std::move(name), got == want, what, std::nullopt};
  if (!c.pass) c.witness = got - want;
  return c;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (c.gating() && !c.pass) return false;
  return true;
}

RationalMatrix antidiagonal(std::size_t rank) {
  RationalMatrix m(rank, std::vector<Rational>(rank, Rational(0)));
  for (std::size_t i = 0; i < rank; ++i) m[i][rank - 1 - i] = 1;
  return m;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw SingularMatrixError("constant metric is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational scale = 1 / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      Rational factor = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= factor * a[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

Matrix to_matrix(const RationalMatrix& m) {
  Matrix out;
  for (const auto& row : m) {
    out.emplace_back();
    for (const auto& x : row) out.back().emplace_back(x);
  }
  return out;
}

VectorField FrobeniusSpec::euler() const {
  VectorField e(rank);
  for (std::size_t j = 0; j < rank; ++j) {
    Expr v = Expr(degrees[j]) * Expr::variable(j);
    if (j < euler_constants.size()) v += Expr(euler_constants[j]);
    e[j] = RatExpr(v);
  }
  return e;
}

VectorField FrobeniusSpec::identity() const {
  VectorField e(rank);
  e[rank - 1] = RatExpr(1);
  return e;
}

bool FrobeniusSpec::antidiagonal_metric() const { return metric == antidiagonal(rank); }

bool FrobeniusSpec::diagonal_euler() const {
  for (const auto& b : euler_constants)
    if (b != 0) return false;
  return true;
}

RationalMatrix flat_metric_from_potential(const Expr& f, std::size_t rank) {
  RationalMatrix pi(rank, std::vector<Rational>(rank, Rational(0)));
  Expr fr = derive(f, rank - 1);
  for (std::size_t i = 0; i < rank; ++i) {
    Expr fri = derive(fr, i);
    for (std::size_t j = 0; j < rank; ++j) {
      auto v = derive(fri, j).constant_value();
      if (!v) throw SpecError("third derivative d_r d_" + idx({i}) + " d_" + idx({j}) + " F is not constant");
      pi[i][j] = *v;
    }
  }
  inverse(pi);
  return pi;
}

Expr standard_form_defect(const Expr& f, std::size_t rank) {
  const std::size_t r = rank - 1;
  Expr tr = Expr::variable(r);
  Expr standard = Rational(1, 2) * tr * tr * Expr::variable(0);
  for (std::size_t i = 1; i < r; ++i) standard += Rational(1, 2) * tr * Expr::variable(i) * Expr::variable(r - i);
  return derive(f - standard, r);
}

std::optional<std::array<std::size_t, 4>> WdvvResidual::first_nonzero() const {
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t q = 0; q < rank_; ++q)
        for (std::size_t n = 0; n < rank_; ++n)
          if (!(*this)(i, j, q, n).is_zero()) return std::array<std::size_t, 4>{i, j, q, n};
  return std::nullopt;
}

WdvvResidual wdvv_residual(const Expr& f, const RationalMatrix& pi) {
  const std::size_t n = pi.size();
  RationalMatrix eta = inverse(pi);
  std::vector<Expr> f3 = third_derivatives(f, n);
  auto F = [&](std::size_t i, std::size_t j, std::size_t k) -> const Expr& { return f3[(i * n + j) * n + k]; };
  // c[i][j][p] = F_{ijk} η^{kp}
  std::vector<Expr> c(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < n; ++p) {
        Expr v;
        for (std::size_t k = 0; k < n; ++k)
          if (eta[k][p] != 0) v += F(i, j, k) * eta[k][p];
        c[(i * n + j) * n + p] = v;
      }
  WdvvResidual res(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t m = 0; m < n; ++m) {
          Expr v;
          for (std::size_t p = 0; p < n; ++p) {
            v += c[(i * n + j) * n + p] * F(p, q, m);
            v -= c[(m * n + j) * n + p] * F(p, q, i);
          }
          res(i, j, q, m) = v;
        }
  return res;
}

QuasihomogeneityReport quasihomogeneity_check(const Expr& f, const VectorField& euler, const Rational& charge) {
  const std::size_t n = euler.size();
  QuasihomogeneityReport rep;
  rep.residual = apply_expr(euler, f) - Expr(Rational(3 - charge)) * f;
  rep.a.assign(n, std::vector<Rational>(n, Rational(0)));
  rep.b.assign(n, Rational(0));
  std::vector<Expr::Term> bad;
  for (const auto& [m, coef] : rep.residual.terms()) {
    if (!is_quadratic_polynomial(Expr::term(m, coef))) {
      bad.emplace_back(m, coef);
      continue;
    }
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < n; ++v) {
      int e = v == 0 ? static_cast<int>(m.lead.num()) : m.exponent(v);
      for (int k = 0; k < e; ++k) vars.push_back(v);
    }
    if (vars.empty())
      rep.c = coef;
    else if (vars.size() == 1)
      rep.b[vars[0]] = coef;
    else if (vars[0] == vars[1])
      rep.a[vars[0]][vars[0]] = 2 * coef;
    else
      rep.a[vars[0]][vars[1]] = rep.a[vars[1]][vars[0]] = coef;
  }
  rep.offending = Expr::from_terms(std::move(bad));
  rep.quadratic = rep.offending.is_zero();
  rep.strict = rep.residual.is_zero();
  return rep;
}

Matrix intersection_form_shortcut(const FrobeniusSpec& spec) {
  const std::size_t n = spec.rank;
  RationalMatrix eta = inverse(spec.metric);
  Matrix out = zero_matrix(n);
  std::vector<std::vector<Expr>> f2(n, std::vector<Expr>(n));
  for (std::size_t a = 0; a < n; ++a) {
    Expr fa = derive(spec.potential, a);
    for (std::size_t b = 0; b < n; ++b) f2[a][b] = derive(fa, b);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Expr v;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (eta[i][a] != 0 && eta[j][b] != 0) v += f2[a][b] * Rational(eta[i][a] * eta[j][b]);
      out[i][j] = RatExpr(v * Rational(spec.charge - 1 + spec.degrees[i] + spec.degrees[j]));
    }
  return out;
}

ContraMetric intersection_form(const FrobeniusSpec& spec, bool strict) {
  const std::size_t n = spec.rank;
  RationalMatrix eta = inverse(spec.metric);
  std::vector<Expr> f3 = third_derivatives(spec.potential, n);
  VectorField E = spec.euler();
  // g[a][b] = F_{abk} E^k
  std::vector<std::vector<Expr>> g(n, std::vector<Expr>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k)
        if (!E[k].is_zero()) g[a][b] += f3[(a * n + b) * n + k] * as_polynomial_field(E[k]);
  Matrix out = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Expr v;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (eta[i][a] != 0 && eta[j][b] != 0) v += g[a][b] * Rational(eta[i][a] * eta[j][b]);
      out[i][j] = RatExpr(v);
    }
  if (strict && spec.diagonal_euler()) {
    if (auto d = first_difference(out, intersection_form_shortcut(spec)))
      throw std::logic_error("intersection form disagrees with its strict shortcut at (" + idx({(*d)[0], (*d)[1]}) +
                             ")");
  }
  return ContraMetric(std::move(out));
}

bool QfpmBundle::passed() const { return all_passed(checks); }

const CheckResult* QfpmBundle::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

QfpmBundle check_qfpm(const ContraMetric& omega2, const ContraMetric& omega1, const RatExpr& tau, const Rational& degree,
                      bool flat_coordinates) {
  const std::size_t n = omega2.rank();
  QfpmBundle b{omega2, omega1, tau, {}, {}, degree, christoffels(omega2), christoffels(omega1), {}, degree != 1};
  b.euler = gradient(tau, omega2.entries());
  b.identity = gradient(tau, omega1.entries());
  const VectorField& E = b.euler;
  const VectorField& e = b.identity;

  FlatnessReport f2 = flatness(omega2);
  b.checks.push_back({"omega2_flat", f2.flat, "Riemann tensor of the intersection form vanishes",
                      f2.flat ? std::nullopt : std::optional<RatExpr>(f2.component)});
  FlatnessReport f1 = flatness(omega1);
  b.checks.push_back({"omega1_flat", f1.flat, "Riemann tensor of the flat metric vanishes",
                      f1.flat ? std::nullopt : std::optional<RatExpr>(f1.component)});

  b.checks.push_back(vector_check("bracket_e_E", lie_bracket(e, E), e, "[e,E] = e"));
  b.checks.push_back(
      matrix_check("lie_E_omega2", lie_metric(omega2.entries(), E), RatExpr(degree - 1) * omega2.entries(),
                   "Lie_E Omega2 = (d-1) Omega2"));
  b.checks.push_back(matrix_check("lie_e_omega2", lie_metric(omega2.entries(), e), omega1.entries(),
                                  "Lie_e Omega2 = Omega1"));
  b.checks.push_back(matrix_check("lie_e_omega1", lie_metric(omega1.entries(), e), zero_matrix(n), "Lie_e Omega1 = 0"));

  PencilReport p = pencil_check(omega2, omega1);
  b.checks.push_back({"pencil_flat", p.flat, p.flat ? "Omega2 + lambda Omega1 is flat" : p.failure,
                      p.flat ? std::nullopt : std::optional<RatExpr>(p.witness)});
  b.checks.push_back({"pencil_additive", p.additive,
                      p.additive ? "Christoffels of the pencil are additive in lambda" : p.failure,
                      p.additive ? std::nullopt : std::optional<RatExpr>(p.witness)});

  b.checks.push_back(scalar_check("e_tau_zero", apply(e, tau), RatExpr(), "e(tau) = 0"));
  b.checks.push_back(scalar_check("E_tau", apply(E, tau), RatExpr(1 - degree) * tau, "E(tau) = (1-d) tau"));

  if (flat_coordinates && tau == RatExpr(Expr::variable(0))) {
    Christoffel want1(n), want2(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        want1(i, 0, k) = RatExpr(i == k ? Rational((1 - degree) / 2) : Rational(0));
        want2(0, i, k) = RatExpr(i == k ? Rational((degree - 1) / 2) : Rational(0)) + derive(E[i], k);
      }
    CheckResult g1{"gamma_i1", true, "Gamma2^{i1}_k = (1-d)/2 delta^i_k", std::nullopt};
    CheckResult g2{"gamma_1j", true, "Gamma2^{1j}_k = (d-1)/2 delta^j_k + d_k E^j", std::nullopt};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (g1.pass && !(b.gamma2(i, 0, k) == want1(i, 0, k))) {
          g1.pass = false;
          g1.detail += ": first mismatch at (" + idx({i, 0, k}) + ")";
          g1.witness = b.gamma2(i, 0, k) - want1(i, 0, k);
        }
        if (g2.pass && !(b.gamma2(0, i, k) == want2(0, i, k))) {
          g2.pass = false;
          g2.detail += ": first mismatch at (" + idx({0, i, k}) + ")";
          g2.witness = b.gamma2(0, i, k) - want2(0, i, k);
        }
      }
    b.checks.push_back(std::move(g1));
    b.checks.push_back(std::move(g2));
    b.checks.push_back(scalar_check("dE11", derive(E[0], 0), RatExpr(1 - degree), "d_1 E^1 = 1-d"));
  }
  return b;
}

Expr tau_from_metric(const RationalMatrix& pi) {
  const std::size_t r = pi.size() - 1;
  Expr tau;
  for (std::size_t j = 0; j <= r; ++j)
    if (pi[j][r] != 0) tau += Expr(pi[j][r]) * Expr::variable(j);
  return tau;
}

Expr tau_alternative(const RationalMatrix& pi) {
  Expr tau;
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i][0] != 0) tau += Expr(pi[i][0]) * Expr::variable(i);
  return tau;
}

QfpmBundle assemble_qfpm(const FrobeniusSpec& spec) {
  QuasihomogeneityReport q = quasihomogeneity_check(spec.potential, spec.euler(), spec.charge);
  ContraMetric omega2 = intersection_form(spec, q.strict);
  ContraMetric omega1(to_matrix(inverse(spec.metric)));
  Expr tau = tau_from_metric(spec.metric);
  QfpmBundle b = check_qfpm(omega2, omega1, RatExpr(tau), spec.charge, true);
  b.checks.push_back(vector_check("euler_is_gradient", b.euler, spec.euler(), "grad_2 tau equals the Euler field"));
  b.checks.push_back(vector_check("identity_is_gradient", b.identity, spec.identity(), "grad_1 tau equals d/dt_r"));
  return b;
}

RegularityTensor regularity(const ContraMetric& omega1, const VectorField& euler, const Rational& degree) {
  const std::size_t n = omega1.rank();
  Tensor3 G = connection(omega1);
  RegularityTensor out;
  out.r = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatExpr v = derive(euler[j], i);
      if (i == j) v += RatExpr(Rational((degree - 1) / 2));
      for (std::size_t k = 0; k < n; ++k)
        if (!G(j, i, k).is_zero() && !euler[k].is_zero()) v += G(j, i, k) * euler[k];
      out.r[i][j] = v;
    }
  out.determinant = determinant(out.r);
  out.regular = !out.determinant.is_zero();
  return out;
}

RegularityTensor regularity(const FrobeniusSpec& spec, const QfpmBundle& bundle) {
  RegularityTensor out = regularity(bundle.omega1, spec.euler(), spec.charge);
  if (spec.diagonal_euler()) {
    Matrix want = zero_matrix(spec.rank);
    for (std::size_t i = 0; i < spec.rank; ++i) {
      out.diagonal.push_back(spec.degrees[i] - spec.degrees[0] / 2);
      want[i][i] = RatExpr(out.diagonal.back());
    }
    out.matches_diagonal = !first_difference(out.r, want);
  }
  return out;
}

DegreeDualityReport degree_duality(const FrobeniusSpec& spec) {
  DegreeDualityReport rep;
  RationalMatrix eta = inverse(spec.metric);
  const Rational want = 2 - spec.charge;
  for (std::size_t i = 0; i < spec.rank; ++i)
    for (std::size_t j = i; j < spec.rank; ++j) {
      if (eta[i][j] == 0) continue;
      Rational sum = spec.degrees[i] + spec.degrees[j];
      if (sum != want) {
        rep.pass = false;
        rep.violations.push_back("(" + idx({i, j}) + "): d_i + d_j = " + to_string(sum) + " but 2 - d = " +
                                 to_string(want));
      }
    }
  return rep;
}

}  // namespace frobkit
