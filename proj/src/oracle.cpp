#include "frobkit/oracle.hpp"

#include <memory>
#include <numeric>
#include <random>
#include <set>

#include "frobkit/conjugate.hpp"
#include "frobkit/jet.hpp"

namespace frobkit {

namespace {

using Values = std::vector<Rational>;
constexpr int kOrder = 6;

Rational small_rational(std::mt19937_64& g, int lo, int hi, int maxden) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, maxden);
  Rational q(num(g), den(g));
  q.canonicalize();
  return q;
}

SamplePoint draw(std::mt19937_64& g, std::size_t rank, std::int64_t root_order) {
  SamplePoint s;
  s.rho = small_rational(g, 1, 7, 3);
  s.point.values.push_back(pow_int(s.rho, static_cast<long>(root_order)));
  for (std::size_t i = 1; i < rank; ++i) s.point.values.push_back(small_rational(g, -7, 7, 4));
  s.point.logval = small_rational(g, -7, 7, 4);
  s.point.branchval = small_rational(g, -7, 7, 4);
  s.lambda = small_rational(g, -7, 7, 4);
  return s;
}

/// The point t = inverse(x), with log(t1) derived from a signed monomial image
/// ±x1^b as b log(x1) + log(-1) for the minus sign.
Point pull(const std::vector<Expr>& inverse, const Point& x) {
  Point t;
  for (const auto& e : inverse) t.values.push_back(evaluate_exact(e, x));
  t.branchval = x.branchval;
  const Expr& lead = inverse[0];
  if (lead.is_single_term()) {
    const auto& [m, c] = lead.terms()[0];
    bool pure = !m.has_transcendental();
    for (auto e : m.rest) pure = pure && e == 0;
    if (pure && (c == 1 || c == -1)) t.logval = m.lead.to_rational() * x.logval + (c < 0 ? x.branchval : Rational(0));
  }
  return t;
}

Values values(const JetMatrix& m) {
  Values out;
  for (const auto& row : m)
    for (const auto& j : row) out.push_back(j.value());
  return out;
}

Values difference(const JetMatrix& a, const JetMatrix& b) {
  Values out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out.push_back(a[i][j].value() - b[i][j].value());
  return out;
}

Values difference(const JetMatrix& a, const Matrix& b, const Point& p) {
  Values out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out.push_back(a[i][j].value() - evaluate_exact(b[i][j], p));
  return out;
}

Values difference(const JetVector& a, const JetVector& b) {
  Values out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i].value() - b[i].value());
  return out;
}

void append(Values& out, const Values& more) { out.insert(out.end(), more.begin(), more.end()); }

JetMatrix constant_matrix(const std::shared_ptr<const JetSpace>& sp, const RationalMatrix& m) {
  JetMatrix out;
  for (const auto& row : m) {
    out.emplace_back();
    for (const auto& x : row) out.back().push_back(Jet::constant(sp, x));
  }
  return out;
}

JetMatrix scaled(const JetMatrix& m, const Jet& s) {
  JetMatrix out = m;
  for (auto& row : out)
    for (auto& x : row) x = x * s;
  return out;
}

JetMatrix sum(const JetMatrix& a, const JetMatrix& b) {
  JetMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += b[i][j];
  return out;
}

JetVector gradient(const JetMatrix& omega, const Jet& f) {
  JetVector out;
  for (const auto& row : omega) {
    Jet v = row[0] * f.derivative(0);
    for (std::size_t j = 1; j < row.size(); ++j) v += row[j] * f.derivative(j);
    out.push_back(std::move(v));
  }
  return out;
}

/// Data of a chart: a potential with its charge, degrees and flat metric.
struct ChartData {
  std::size_t rank = 0;
  Rational charge;
  std::vector<Rational> degrees;
  std::vector<Rational> constants;
  RationalMatrix eta;  // Π⁻¹
  std::shared_ptr<TaylorModel> potential;

  ChartData(const FrobeniusSpec& s, int order)
      : rank(s.rank),
        charge(s.charge),
        degrees(s.degrees),
        constants(s.euler_constants),
        eta(inverse(s.metric)),
        potential(std::make_shared<TaylorModel>(RatExpr(s.potential), s.rank, order)) {}

  [[nodiscard]] std::shared_ptr<const JetSpace> space() const { return JetSpace::get(rank, potential->order()); }

  [[nodiscard]] JetVector euler(const Point& p) const {
    JetVector e;
    for (std::size_t j = 0; j < rank; ++j)
      e.push_back(Jet::coordinate(space(), j, p.values[j]) * degrees[j] + Jet::constant(space(), constants[j]));
    return e;
  }

  [[nodiscard]] JetVector identity() const {
    JetVector e(rank, Jet::constant(space(), Rational(0)));
    e[rank - 1] = Jet::constant(space(), Rational(1));
    return e;
  }

  /// η^{ia} η^{jb} F_{abk} E^k.
  [[nodiscard]] JetMatrix intersection(const Jet& f, const JetVector& e) const {
    const std::size_t n = rank;
    JetMatrix contracted(n, JetVector(n, Jet::constant(space(), Rational(0))));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        Jet fab = f.derivative(a).derivative(b);
        Jet v = fab.derivative(0) * e[0];
        for (std::size_t k = 1; k < n; ++k) v += fab.derivative(k) * e[k];
        contracted[a][b] = v;
        contracted[b][a] = v;
      }
    JetMatrix out(n, JetVector(n, Jet::constant(space(), Rational(0))));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            if (eta[i][a] != 0 && eta[j][b] != 0) out[i][j] += contracted[a][b] * (eta[i][a] * eta[j][b]);
    return out;
  }

  [[nodiscard]] JetMatrix intersection_at(const Point& p) const { return intersection(potential->at(p), euler(p)); }

  [[nodiscard]] Values wdvv(const Point& p) const {
    Jet f = potential->at(p);
    const std::size_t n = rank;
    std::vector<Rational> f3(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) f3[(i * n + j) * n + k] = f.derivative(i).derivative(j).derivative(k).value();
    auto F = [&](std::size_t i, std::size_t j, std::size_t k) { return f3[(i * n + j) * n + k]; };
    Values out;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t q = 0; q < n; ++q)
          for (std::size_t m = 0; m < n; ++m) {
            Rational v = 0;
            for (std::size_t k = 0; k < n; ++k)
              for (std::size_t p2 = 0; p2 < n; ++p2)
                if (eta[k][p2] != 0) v += (F(i, j, k) * F(p2, q, m) - F(m, j, k) * F(p2, q, i)) * eta[k][p2];
            out.push_back(v);
          }
    return out;
  }

  /// E F - (3 - d) F at p.
  [[nodiscard]] Rational homogeneity(const Point& p) const {
    Jet f = potential->at(p);
    JetVector e = euler(p);
    return (jet_apply(e, f) - f * (3 - charge)).value();
  }

  [[nodiscard]] Values flat_metric(const Point& p) const {
    Jet f = potential->at(p).derivative(rank - 1);
    RationalMatrix pi = inverse(eta);
    Values out;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) out.push_back(f.derivative(i).derivative(j).value() - pi[i][j]);
    return out;
  }
};

/// Numeric value of t1^w (F - ½ t_r Σ t_i t_{r+1-i}) at t.
Rational transformed_value(const FrobeniusSpec& spec, const Point& t, const Rational& w) {
  const std::size_t r = spec.rank;
  Rational s = 0;
  for (std::size_t i = 0; i < r; ++i) s += t.values[i] * t.values[r - 1 - i];
  return power_value(t.values[0], Exponent(w)) * (evaluate_exact(spec.potential, t) - t.values[r - 1] * s / 2);
}

/// Numeric Jacobian ∂x'^a/∂x^i of a map at a point.
struct NumericJacobian {
  std::vector<std::vector<Expr>> d;
  explicit NumericJacobian(const std::vector<Expr>& forward) {
    for (const auto& f : forward) {
      d.emplace_back();
      for (std::size_t i = 0; i < forward.size(); ++i) d.back().push_back(derive(f, i));
    }
  }
  [[nodiscard]] std::vector<Values> at(const Point& p) const {
    std::vector<Values> j;
    for (const auto& row : d) {
      j.emplace_back();
      for (const auto& e : row) j.back().push_back(evaluate_exact(e, p));
    }
    return j;
  }
};

std::vector<Values> push(const std::vector<Values>& j, const JetMatrix& omega) {
  const std::size_t n = j.size();
  std::vector<Values> out(n, Values(n, Rational(0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) out[a][b] += j[a][i] * omega[i][k].value() * j[b][k];
  return out;
}

Values difference(const JetMatrix& a, const std::vector<Values>& b) {
  Values out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[i][k].value() - b[i][k]);
  return out;
}

class Builder {
 public:
  explicit Builder(OracleRegistry& reg) : reg_(reg) {}

  void add(std::string name, std::string what, std::function<Values(const SamplePoint&)> f) {
    reg_.identities.push_back({std::move(name), std::move(what), std::move(f)});
  }
  void skip(std::string name, std::string why) {
    OracleCheck c;
    c.name = std::move(name);
    c.applicable = false;
    c.detail = std::move(why);
    reg_.skipped.push_back(std::move(c));
  }
  void note(const RatExpr& e) { reg_.root_order = std::lcm(reg_.root_order, lead_denominator_lcm(e)); }
  void note(const Expr& e) { note(RatExpr(e)); }
  void note(const std::vector<Expr>& v) {
    for (const auto& e : v) note(e);
  }
  void note(const Matrix& m) {
    for (const auto& row : m)
      for (const auto& e : row) note(e);
  }

 private:
  OracleRegistry& reg_;
};

void add_source_identities(Builder& b, const FrobeniusSpec& spec, const std::shared_ptr<ChartData>& src) {
  b.add("flat_metric", "d_r d_i d_j F equals the flat metric", [src](const SamplePoint& s) { return src->flat_metric(s.point); });
  b.add("wdvv", "WDVV residual vanishes", [src](const SamplePoint& s) { return src->wdvv(s.point); });

  QuasihomogeneityReport q = quasihomogeneity_check(spec.potential, spec.euler(), spec.charge);
  b.note(q.residual);
  if (q.quadratic) {
    auto a = q.a;
    auto bb = q.b;
    auto c = q.c;
    b.add("quasihomogeneity", "E F - (3-d) F equals the extracted quadratic part", [src, a, bb, c](const SamplePoint& s) {
      Rational poly = c;
      const auto& t = s.point.values;
      for (std::size_t i = 0; i < t.size(); ++i) {
        poly += bb[i] * t[i];
        for (std::size_t j = 0; j < t.size(); ++j) poly += a[i][j] * t[i] * t[j] / 2;
      }
      return Values{src->homogeneity(s.point) - poly};
    });
  } else {
    Expr residual = q.residual;
    b.add("quasihomogeneity", "E F - (3-d) F equals the symbolic residual", [src, residual](const SamplePoint& s) {
      return Values{src->homogeneity(s.point) - evaluate_exact(residual, s.point)};
    });
  }

  Matrix omega2;
  try {
    omega2 = intersection_form(spec, q.strict).entries();
  } catch (const std::exception& e) {
    b.skip("intersection_form", e.what());
    return;
  }
  b.note(omega2);
  b.add("intersection_form", "eta F_abk E^k eta equals the symbolic intersection form",
        [src, omega2](const SamplePoint& s) { return difference(src->intersection_at(s.point), omega2, s.point); });

  QfpmBundle bundle = assemble_qfpm(spec);
  b.note(bundle.tau);
  auto tau_model = std::make_shared<TaylorModel>(bundle.tau, spec.rank, kOrder);
  const Rational d = spec.charge;
  auto omega1 = [src] { return constant_matrix(src->space(), src->eta); };

  b.add("omega2_flat", "Riemann tensor of Omega2 vanishes", [src](const SamplePoint& s) {
    Values out;
    for (const auto& r : jet_riemann(src->intersection_at(s.point))) out.push_back(r.value());
    return out;
  });
  b.add("pencil_flat", "Riemann tensor of Omega2 + lambda Omega1 vanishes", [src, omega1](const SamplePoint& s) {
    JetMatrix pencil = sum(src->intersection_at(s.point), scaled(omega1(), Jet::constant(src->space(), s.lambda)));
    Values out;
    for (const auto& r : jet_riemann(pencil)) out.push_back(r.value());
    return out;
  });
  b.add("pencil_additive", "Christoffels of the pencil are additive in lambda", [src, omega1](const SamplePoint& s) {
    JetMatrix o2 = src->intersection_at(s.point);
    Jet lam = Jet::constant(src->space(), s.lambda);
    JetTensor3 joint = jet_contravariant_christoffels(sum(o2, scaled(omega1(), lam)));
    JetTensor3 g2 = jet_contravariant_christoffels(o2);
    JetTensor3 g1 = jet_contravariant_christoffels(omega1());
    Values out;
    for (std::size_t i = 0; i < joint.size(); ++i)
      for (std::size_t j = 0; j < joint.size(); ++j)
        for (std::size_t k = 0; k < joint.size(); ++k)
          out.push_back((joint[i][j][k] - g2[i][j][k] - g1[i][j][k] * lam).value());
    return out;
  });
  b.add("bracket_e_E", "[e, E] = e", [src](const SamplePoint& s) {
    return difference(jet_bracket(src->identity(), src->euler(s.point)), src->identity());
  });
  b.add("lie_E_omega2", "Lie_E Omega2 = (d-1) Omega2", [src, d](const SamplePoint& s) {
    JetMatrix o2 = src->intersection_at(s.point);
    return difference(jet_lie_metric(o2, src->euler(s.point)), scaled(o2, Jet::constant(src->space(), d - 1)));
  });
  b.add("lie_e_omega2", "Lie_e Omega2 = Omega1", [src, omega1](const SamplePoint& s) {
    return difference(jet_lie_metric(src->intersection_at(s.point), src->identity()), omega1());
  });
  b.add("lie_e_omega1", "Lie_e Omega1 = 0",
        [src, omega1](const SamplePoint&) { return values(jet_lie_metric(omega1(), src->identity())); });
  b.add("e_tau_zero", "e(tau) = 0", [src, tau_model](const SamplePoint& s) {
    return Values{jet_apply(src->identity(), tau_model->at(s.point)).value()};
  });
  b.add("E_tau", "E(tau) = (1-d) tau", [src, tau_model, d](const SamplePoint& s) {
    Jet tau = tau_model->at(s.point);
    return Values{(jet_apply(src->euler(s.point), tau) - tau * (1 - d)).value()};
  });
  b.add("euler_is_gradient", "Omega2 dtau = E", [src, tau_model](const SamplePoint& s) {
    return difference(gradient(src->intersection_at(s.point), tau_model->at(s.point)), src->euler(s.point));
  });
  b.add("identity_is_gradient", "Omega1 dtau = e", [src, tau_model, omega1](const SamplePoint& s) {
    return difference(gradient(omega1(), tau_model->at(s.point)), src->identity());
  });

  RegularityTensor reg = regularity(spec, bundle);
  Matrix rsym = reg.r;
  b.add("regularity", "(d-1)/2 + d_i E^j + Gamma^j_ik E^k equals the symbolic R",
        [src, omega1, rsym, d](const SamplePoint& s) {
          JetVector e = src->euler(s.point);
          JetTensor3 g = jet_connection(omega1());
          const std::size_t n = e.size();
          Values out;
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
              Jet v = e[j].derivative(i);
              if (i == j) v += Jet::constant(src->space(), (d - 1) / 2);
              for (std::size_t k = 0; k < n; ++k) v += g[j][i][k] * e[k];
              out.push_back(v.value() - evaluate_exact(rsym[i][j], s.point));
            }
          return out;
        });

  // conjugate pencil
  ConjugationData cd = [&]() -> ConjugationData {
    try {
      return conjugate_pencil(bundle, spec.degrees);
    } catch (const IneligibleError& e) {
      b.skip("conjugate_pencil", e.what());
      throw;
    }
  }();
  b.note(cd.f);
  b.note(cd.omega1_tilde.entries());
  b.note(cd.regularity_tilde.r);
  const Rational a = 2 / (1 - d);
  const Rational dt = 2 - d;
  struct Tilde {
    JetMatrix omega2, omega1, omega1_tilde;
    JetVector euler, identity, e_tilde;
    Jet tau, f;
  };
  auto tilde = [src, tau_model, a](const Point& p) {
    Tilde t;
    t.omega2 = src->intersection_at(p);
    t.omega1 = constant_matrix(src->space(), src->eta);
    t.euler = src->euler(p);
    t.identity = src->identity();
    t.tau = tau_model->at(p);
    t.f = t.tau.pow(a);
    Jet fp = t.tau.pow(a - 1) * a;
    const std::size_t n = t.euler.size();
    t.omega1_tilde = scaled(t.omega1, t.f);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        t.omega1_tilde[i][j] -= fp * (t.euler[i] * t.identity[j] + t.identity[i] * t.euler[j]);
    for (const auto& x : t.identity) t.e_tilde.push_back(x * t.f);
    return t;
  };
  Matrix o1t = cd.omega1_tilde.entries();
  b.add("omega1_tilde_closed_form", "f Omega1 - f'(E e + e E) = Lie_e~ Omega2 = symbolic Omega1~",
        [tilde, o1t](const SamplePoint& s) {
          Tilde t = tilde(s.point);
          Values out = difference(t.omega1_tilde, jet_lie_metric(t.omega2, t.e_tilde));
          append(out, difference(t.omega1_tilde, o1t, s.point));
          return out;
        });
  b.add("lie2_metric", "Lie_e~^2 Omega2 = 0", [tilde](const SamplePoint& s) {
    Tilde t = tilde(s.point);
    return values(jet_lie_metric(jet_lie_metric(t.omega2, t.e_tilde), t.e_tilde));
  });
  b.add("lie_pbht_christoffels", "delta part of Lie_e~ {,} equals the Christoffels of Omega1~",
        [tilde](const SamplePoint& s) {
          Tilde t = tilde(s.point);
          JetTensor3 once = jet_lie_christoffel(t.omega2, jet_contravariant_christoffels(t.omega2), t.e_tilde);
          JetTensor3 want = jet_contravariant_christoffels(t.omega1_tilde);
          Values out;
          for (std::size_t i = 0; i < once.size(); ++i)
            for (std::size_t j = 0; j < once.size(); ++j)
              for (std::size_t k = 0; k < once.size(); ++k) out.push_back((once[i][j][k] - want[i][j][k]).value());
          return out;
        });
  b.add("lie2_pbht", "both parts of Lie_e~^2 {,} vanish", [tilde](const SamplePoint& s) {
    Tilde t = tilde(s.point);
    JetMatrix m1 = jet_lie_metric(t.omega2, t.e_tilde);
    JetTensor3 g1 = jet_lie_christoffel(t.omega2, jet_contravariant_christoffels(t.omega2), t.e_tilde);
    Values out = values(jet_lie_metric(m1, t.e_tilde));
    JetTensor3 g2 = jet_lie_christoffel(m1, g1, t.e_tilde);
    for (const auto& x : g2)
      for (const auto& y : x)
        for (const auto& z : y) out.push_back(z.value());
    return out;
  });
  b.add("omega1_tilde_determinant", "det Omega1~ = f^r det Omega1", [tilde](const SamplePoint& s) {
    Tilde t = tilde(s.point);
    Jet fr = t.f;
    for (std::size_t i = 1; i < t.euler.size(); ++i) fr = fr * t.f;
    return Values{(jet_determinant(t.omega1_tilde) - fr * jet_determinant(t.omega1)).value()};
  });
  b.add("conjugate_omega1_flat", "Riemann tensor of Omega1~ vanishes", [tilde](const SamplePoint& s) {
    Values out;
    for (const auto& r : jet_riemann(tilde(s.point).omega1_tilde)) out.push_back(r.value());
    return out;
  });
  b.add("conjugate_pencil_flat", "Riemann tensor of Omega2 + lambda Omega1~ vanishes", [tilde](const SamplePoint& s) {
    Tilde t = tilde(s.point);
    Values out;
    for (const auto& r : jet_riemann(sum(t.omega2, scaled(t.omega1_tilde, Jet::constant(t.f.space(), s.lambda)))))
      out.push_back(r.value());
    return out;
  });
  b.add("conjugate_bracket", "[e~, E~] = e~ with E~ = -E", [tilde](const SamplePoint& s) {
    Tilde t = tilde(s.point);
    JetVector minus_e;
    for (const auto& x : t.euler) minus_e.push_back(-x);
    return difference(jet_bracket(t.e_tilde, minus_e), t.e_tilde);
  });
  b.add("conjugate_lie_E_omega2", "Lie_E~ Omega2 = (d~-1) Omega2", [tilde, dt](const SamplePoint& s) {
    Tilde t = tilde(s.point);
    JetVector minus_e;
    for (const auto& x : t.euler) minus_e.push_back(-x);
    return difference(jet_lie_metric(t.omega2, minus_e), scaled(t.omega2, Jet::constant(t.f.space(), dt - 1)));
  });
  b.add("conjugate_lie_e_omega1", "Lie_e~ Omega1~ = 0",
        [tilde](const SamplePoint& s) {
          Tilde t = tilde(s.point);
          return values(jet_lie_metric(t.omega1_tilde, t.e_tilde));
        });
  b.add("conjugate_tau", "e~(tau~) = 0 and E~(tau~) = (1-d~) tau~", [tilde, dt](const SamplePoint& s) {
    Tilde t = tilde(s.point);
    JetVector minus_e;
    for (const auto& x : t.euler) minus_e.push_back(-x);
    Jet tt = -t.tau;
    return Values{jet_apply(t.e_tilde, tt).value(), (jet_apply(minus_e, tt) - tt * (1 - dt)).value()};
  });
  b.add("conjugate_gradients", "Omega2 dtau~ = -E and Omega1~ dtau~ = e~", [tilde](const SamplePoint& s) {
    Tilde t = tilde(s.point);
    Jet tt = -t.tau;
    JetVector minus_e;
    for (const auto& x : t.euler) minus_e.push_back(-x);
    Values out = difference(gradient(t.omega2, tt), minus_e);
    append(out, difference(gradient(t.omega1_tilde, tt), t.e_tilde));
    return out;
  });
  Matrix rt = cd.regularity_tilde.r;
  b.add("conjugate_regularity", "R~ from Omega1~ and E~ equals the symbolic R~", [tilde, rt, dt](const SamplePoint& s) {
    Tilde t = tilde(s.point);
    JetTensor3 g = jet_connection(t.omega1_tilde);
    const std::size_t n = t.euler.size();
    Values out;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Jet v = -t.euler[j].derivative(i);
        if (i == j) v += Jet::constant(t.f.space(), (dt - 1) / 2);
        for (std::size_t k = 0; k < n; ++k) v -= g[j][i][k] * t.euler[k];
        out.push_back(v.value() - evaluate_exact(rt[i][j], s.point));
      }
    return out;
  });
}

void add_transform_identities(Builder& b, const FrobeniusSpec& spec, const std::shared_ptr<ChartData>& src) {
  const std::size_t r = spec.rank;
  const Rational d1 = spec.degrees[0];

  // inversion, z chart
  std::optional<TransformResult> inv;
  try {
    inv = inversion_symmetry(spec);
  } catch (const IneligibleError& e) {
    b.skip("inversion_potential", e.what());
  }
  if (inv) {
    auto z_inverse = inv->map.inverse();
    Expr fhat = inv->potential;
    b.note(fhat);
    b.note(z_inverse);
    b.note(inv->map.forward());
    b.add("inversion_potential", "F^(z) equals t1^-2 (F - 1/2 t_r sum t_i t_(r+1-i)) at t(z)",
          [spec, z_inverse, fhat](const SamplePoint& s) {
            Point t = pull(z_inverse, s.point);
            return Values{evaluate_exact(fhat, s.point) - transformed_value(spec, t, Rational(-2))};
          });
    auto target = std::make_shared<ChartData>(inv->target, 4);
    b.add("inversion_wdvv", "WDVV residual of F^ vanishes", [target](const SamplePoint& s) { return target->wdvv(s.point); });
    QuasihomogeneityReport q = quasihomogeneity_check(fhat, inv->target.euler(), inv->target.charge);
    Expr residual = q.residual;
    b.note(residual);
    b.add("inversion_quasihomogeneity", "E^ F^ - (3-d^) F^ equals the symbolic residual",
          [target, residual](const SamplePoint& s) {
            return Values{target->homogeneity(s.point) - evaluate_exact(residual, s.point)};
          });
    try {
      TransformResult twice = inversion_symmetry([&] {
        FrobeniusSpec t = inv->target;
        t.variables = VarTable::numbered("t", r);
        return t;
      }());
      Expr back = twice.potential - spec.potential;
      b.note(back);
      b.add("double_inversion", "inverting twice returns F plus the symbolic quadratic residual",
            [spec, z_inverse, back](const SamplePoint& s) {
              Point z = pull(z_inverse, s.point);
              Point t = pull(z_inverse, z);
              Rational sz = 0;
              for (std::size_t i = 0; i < spec.rank; ++i) sz += z.values[i] * z.values[spec.rank - 1 - i];
              Rational fz = transformed_value(spec, t, Rational(-2));
              Rational twice_value = power_value(z.values[0], Exponent(-2)) * (fz - z.values[spec.rank - 1] * sz / 2);
              return Values{twice_value - evaluate_exact(spec.potential, s.point) - evaluate_exact(back, s.point)};
            });
    } catch (const IneligibleError& e) {
      b.skip("double_inversion", e.what());
    }
  }

  // conjugate coordinates, s chart
  std::optional<CoordinateMap> map;
  std::string why;
  try {
    map = conjugate_coordinates(spec);
  } catch (const IneligibleError& e) {
    why = e.what();
  }
  if (!map) {
    for (const char* n : {"conjugate_jacobian", "conjugate_potential", "conjugate_wdvv", "conjugate_quasihomogeneity",
                          "conjugate_intersection_form", "conjugate_pushforward", "conjugate_equals_inversion",
                          "double_conjugate"})
      b.skip(n, why);
    if (!inv) return;
    try {
      CoordinateMap raw = conjugate_map_from_degrees(spec.degrees);
      b.note(raw.forward());
      b.note(raw.inverse());
      FrobeniusSpec renamed = inv->target;
      auto target = std::make_shared<ChartData>(renamed, 4);
      auto jac = std::make_shared<NumericJacobian>(raw.forward());
      auto inverse_map = raw.inverse();
      b.add("inversion_structure", "intersection form of F^ equals Omega2 pushed by the conjugate s-map",
            [src, target, jac, inverse_map](const SamplePoint& s) {
              Point t = pull(inverse_map, s.point);
              return difference(target->intersection_at(s.point), push(jac->at(t), src->intersection_at(t)));
            });
    } catch (const std::exception& e) {
      b.skip("inversion_structure", e.what());
    }
    return;
  }

  TransformResult conj = conjugate_potential(spec);
  auto s_inverse = map->inverse();
  auto s_forward = map->forward();
  const Rational w = -4 / d1;
  Expr ftilde = conj.potential;
  b.note(ftilde);
  b.note(s_inverse);
  b.note(s_forward);
  b.note(conj.metric.entries());
  auto closed = conjugate_jacobian_closed_form(spec.degrees);
  for (const auto& row : closed) b.note(row);
  auto jac = std::make_shared<NumericJacobian>(s_forward);

  b.add("conjugate_jacobian", "Jacobian of the s-map equals its closed form", [jac, closed](const SamplePoint& s) {
    auto j = jac->at(s.point);
    Values out;
    for (std::size_t a = 0; a < j.size(); ++a)
      for (std::size_t i = 0; i < j.size(); ++i) out.push_back(j[a][i] - evaluate_exact(closed[a][i], s.point));
    return out;
  });
  b.add("conjugate_potential", "F~(s) equals t1^(-4/d1) (F - 1/2 t_r sum t_i t_(r+1-i)) at t(s)",
        [spec, s_inverse, ftilde, w](const SamplePoint& s) {
          Point t = pull(s_inverse, s.point);
          return Values{evaluate_exact(ftilde, s.point) - transformed_value(spec, t, w)};
        });
  auto target = std::make_shared<ChartData>(conj.target, 4);
  b.add("conjugate_wdvv", "WDVV residual of F~ vanishes", [target](const SamplePoint& s) { return target->wdvv(s.point); });
  b.add("conjugate_quasihomogeneity", "E~ F~ = (3-d~) F~",
        [target](const SamplePoint& s) { return Values{target->homogeneity(s.point)}; });
  b.add("conjugate_intersection_form", "intersection form of F~ equals Omega2 pushed to s",
        [src, target, jac, s_inverse](const SamplePoint& s) {
          Point t = pull(s_inverse, s.point);
          return difference(target->intersection_at(s.point), push(jac->at(t), src->intersection_at(t)));
        });
  Matrix pushed = conj.metric.entries();
  b.add("conjugate_pushforward", "symbolic Omega2(s) equals J Omega2 J^T", [src, jac, s_inverse, pushed](const SamplePoint& s) {
    Point t = pull(s_inverse, s.point);
    auto p = push(jac->at(t), src->intersection_at(t));
    Values out;
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t c = 0; c < p.size(); ++c) out.push_back(evaluate_exact(pushed[a][c], s.point) - p[a][c]);
    return out;
  });
  if (inv) {
    auto z_inverse = inv->map.inverse();
    b.add("conjugate_equals_inversion", "the conjugate and inversion transforms agree at every point",
          [spec, s_inverse, z_inverse, w](const SamplePoint& s) {
            return Values{transformed_value(spec, pull(s_inverse, s.point), w) -
                          transformed_value(spec, pull(z_inverse, s.point), Rational(-2))};
          });
  }
  try {
    CoordinateMap back = conjugate_map_from_degrees(conj.target.degrees);
    auto u_inverse = back.inverse();
    b.note(u_inverse);
    const Rational w2 = -4 / conj.target.degrees[0];
    b.add("double_conjugate", "conjugating twice returns F", [spec, s_inverse, u_inverse, w, w2](const SamplePoint& s) {
      Point mid = pull(u_inverse, s.point);
      Point t = pull(s_inverse, mid);
      const std::size_t n = spec.rank;
      Rational sm = 0;
      for (std::size_t i = 0; i < n; ++i) sm += mid.values[i] * mid.values[n - 1 - i];
      Rational once = transformed_value(spec, t, w);
      Rational twice = power_value(mid.values[0], Exponent(w2)) * (once - mid.values[n - 1] * sm / 2);
      return Values{twice - evaluate_exact(spec.potential, s.point)};
    });
  } catch (const std::exception& e) {
    b.skip("double_conjugate", e.what());
  }
}

}  // namespace

bool OracleReport::passed() const {
  for (const auto& c : checks)
    if (c.applicable && !c.pass) return false;
  return true;
}

OracleRegistry oracle_registry(const FrobeniusSpec& spec) {
  OracleRegistry reg;
  Builder b(reg);
  b.note(spec.potential);
  auto src = std::make_shared<ChartData>(spec, kOrder);
  try {
    add_source_identities(b, spec, src);
  } catch (const IneligibleError&) {
    // conjugate pencil identities were skipped with the reason recorded
  }
  if (spec.antidiagonal_metric() && spec.diagonal_euler() && spec.charge != 1) {
    add_transform_identities(b, spec, src);
  } else {
    b.skip("conjugate_potential", spec.charge == 1 ? "charge = 1" : "metric not antidiagonal or Euler field not diagonal");
  }
  return reg;
}

OracleReport run_identities(const std::vector<OracleIdentity>& identities, std::size_t rank, std::int64_t root_order,
                            std::size_t samples, std::uint64_t seed) {
  OracleReport rep;
  rep.seed = seed;
  rep.root_order = root_order;
  std::mt19937_64 g(seed);
  for (std::size_t i = 0; i < samples; ++i) rep.points.push_back(draw(g, rank, root_order));

  for (std::size_t k = 0; k < identities.size(); ++k) {
    const auto& id = identities[k];
    OracleCheck c;
    c.name = id.name;
    c.what = id.what;
    c.pass = true;
    std::mt19937_64 spare(seed * 1000003 + k + 1);
    for (std::size_t i = 0; i < rep.points.size() && c.pass; ++i) {
      SamplePoint p = rep.points[i];
      for (int attempt = 0;; ++attempt) {
        try {
          Values v = id.residual(p);
          for (std::size_t m = 0; m < v.size(); ++m)
            if (v[m] != 0) {
              c.pass = false;
              c.detail = "nonzero at sample " + std::to_string(i + 1) + ", component " + std::to_string(m + 1) + ": " +
                         to_string(v[m]);
              break;
            }
          if (c.pass) ++c.points;
          break;
        } catch (const DivisionByZero&) {
        } catch (const SingularMatrixError&) {
        } catch (const std::exception& e) {
          c.pass = false;
          c.detail = std::string("evaluation error at sample ") + std::to_string(i + 1) + ": " + e.what();
          break;
        }
        if (attempt == 50) {
          c.pass = false;
          c.detail = "no admissible replacement for sample " + std::to_string(i + 1);
          break;
        }
        ++c.redraws;
        p = draw(spare, rank, root_order);
      }
    }
    if (c.pass) c.detail = "zero at " + std::to_string(c.points) + " points";
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

OracleReport run_oracle(const FrobeniusSpec& spec, std::size_t samples, std::uint64_t seed,
                        const std::vector<std::string>& only) {
  OracleRegistry reg = oracle_registry(spec);
  std::set<std::string> keep(only.begin(), only.end());
  std::vector<OracleIdentity> chosen;
  for (auto& id : reg.identities)
    if (keep.empty() || keep.count(id.name)) chosen.push_back(std::move(id));
  OracleReport rep = run_identities(chosen, spec.rank, reg.root_order, samples, seed);
  for (auto& s : reg.skipped)
    if (keep.empty() || keep.count(s.name)) rep.checks.push_back(std::move(s));
  return rep;
}

}  // namespace frobkit
