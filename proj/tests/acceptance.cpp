// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "frobkit/cli.hpp"
#include "frobkit/conjugate.hpp"
#include "frobkit/errors.hpp"
#include "frobkit/jet.hpp"
#include "frobkit/oracle.hpp"
#include "property.hpp"

using namespace frobkit;

namespace {

const std::string kSpecs = FROBKIT_SPEC_DIR;

FrobeniusSpec spec(const std::string& file) { return load_spec(kSpecs + "/" + file + ".json"); }

Matrix matrix(const std::vector<std::vector<std::string>>& rows, const VarTable& vars) {
  Matrix m;
  for (const auto& row : rows) {
    m.emplace_back();
    for (const auto& e : row) m.back().push_back(RatExpr(parse_expr(e, vars)));
  }
  return m;
}

std::vector<Expr> exprs(const std::vector<std::string>& items, const VarTable& vars) {
  std::vector<Expr> out;
  for (const auto& e : items) out.push_back(parse_expr(e, vars));
  return out;
}

/// Collects failed expectations of one criterion.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void checks(const std::vector<CheckResult>& cs, const std::string& where) {
    for (const auto& c : cs)
      if (c.gating() && !c.pass) failures_.push_back(where + "." + c.name);
  }
  [[nodiscard]] bool ok() const { return failures_.empty(); }
  [[nodiscard]] std::string summary() const {
    std::string out;
    for (std::size_t i = 0; i < failures_.size() && i < 6; ++i) out += (i ? "; " : "") + failures_[i];
    if (failures_.size() > 6) out += "; ...";
    return out;
  }

 private:
  std::vector<std::string> failures_;
};

struct FamilyCase {
  std::string file;
  int k;
  Rational c;
};

const std::vector<FamilyCase> kFamily = {{"family_k4_c1", 4, 1},   {"family_k4_c3_2", 4, Rational(3, 2)},
                                         {"family_k5_c1", 5, 1},   {"family_k5_c3_2", 5, Rational(3, 2)},
                                         {"family_k7_c1", 7, 1},   {"family_k7_c3_2", 7, Rational(3, 2)}};

FrobeniusSpec displayed_conjugate_of_charge_minus_one() {
  FrobeniusSpec s;
  s.name = "charge_minus_one_conjugate";
  s.rank = 2;
  s.charge = 3;
  s.degrees = {-2, 1};
  s.euler_constants = {0, 0};
  s.metric = antidiagonal(2);
  s.variables = VarTable::numbered("s", 2);
  s.potential = parse_expr("1/2*s1*s2^2 - log(s1)", s.variables);
  return s;
}

// criterion 1
void charge_minus_one(Tally& t) {
  FrobeniusSpec f = spec("charge_minus_one");
  const VarTable& tv = f.variables;
  const VarTable sv = VarTable::numbered("s", 2);
  QfpmBundle bundle = assemble_qfpm(f);
  t.expect(bundle.omega2.entries() == matrix({{"2*t1", "t2"}, {"t2", "4"}}, tv), "Omega2(t)");
  t.expect(bundle.omega1.entries() == matrix({{"0", "1"}, {"1", "0"}}, tv), "Omega1 antidiagonal");

  CoordinateMap s = conjugate_map_from_degrees(f.degrees);
  t.expect(s.forward() == exprs({"-t1", "t2*t1^(-1)"}, tv), "s-map");
  Matrix pushed = pushforward(bundle.omega2.entries(), s);
  t.expect(pushed == matrix({{"-2*s1", "s2"}, {"s2", "4*s1^(-2)"}}, sv), "Omega2(s)");

  QuasihomogeneityReport q = quasihomogeneity_check(f.potential, f.euler(), f.charge);
  t.expect(q.quadratic && q.residual == parse_expr("2*t1^2", tv), "anomaly 2 t1^2");

  FrobeniusSpec g = displayed_conjugate_of_charge_minus_one();
  t.expect(!wdvv_residual(g.potential, g.metric).first_nonzero(), "WDVV of F~");
  QuasihomogeneityReport gq = quasihomogeneity_check(g.potential, g.euler(), g.charge);
  t.expect(gq.residual == Expr(2), "E~ F~ = 2");
  t.expect(intersection_form(g, false).entries() == pushed, "intersection form of F~");
}

// criterion 2
void rank3(Tally& t) {
  FrobeniusSpec f = spec("rank3_trivial");
  const VarTable sv = VarTable::numbered("s", 3);
  ConjugationData cd = conjugate_pencil(assemble_qfpm(f), f.degrees);
  TransformResult tr = conjugate_potential(f, &cd);
  t.checks(tr.checks, "potential");
  t.expect(tr.map.forward() == exprs({"-t1", "t2*t1^(-1)", "1/2*t2^2*t1^(-3) + t3*t1^(-2)"}, f.variables), "s-map");
  Matrix want = matrix({{"-s1", "0", "s3"},
                        {"0", "s3 + 3/2*s2^2*s1^(-1) + s1^(-1)", "-s2^3*s1^(-2) - 2*s2*s1^(-2)"},
                        {"s3", "-s2^3*s1^(-2) - 2*s2*s1^(-2)", "3/4*s2^4*s1^(-3) + 3*s2^2*s1^(-3) - s1^(-3)"}},
                       sv);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j)
      t.expect(tr.metric.entries()[i][j] == want[i][j],
               "Omega2(s) entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  Expr ft = parse_expr("-1/6*s1^(-1) + 1/2*s2^2*s1^(-1) + 1/8*s2^4*s1^(-1) + 1/2*s2^2*s3 + 1/2*s1*s3^2", sv);
  t.expect(tr.potential == ft, "F~(s)");
  t.expect(tr.target.euler() == VectorField{RatExpr(parse_expr("-s1", sv)), RatExpr(0), RatExpr(parse_expr("s3", sv))},
           "E~");
  t.expect(quasihomogeneity_check(ft, tr.target.euler(), tr.target.charge).strict, "E~ F~ = F~");
  EqualityReport eq = potential_equality_check(f);
  t.expect(eq.equal && eq.mode == "exact", "conjugate equals inversion");
}

// criteria 3 and 4
void pencils(Tally& t, bool lie_only) {
  for (const char* name : {"charge_minus_one", "rank3_trivial"}) {
    FrobeniusSpec f = spec(name);
    QfpmBundle bundle = assemble_qfpm(f);
    ConjugationData cd = conjugate_pencil(bundle, f.degrees);
    if (lie_only) {
      for (const char* c : {"lie2_pbht_metric", "lie2_pbht_christoffel", "lie_pbht_christoffels"}) {
        bool found = false;
        for (const auto& r : cd.checks)
          if (r.name == c) {
            found = true;
            t.expect(r.pass, std::string(name) + "." + c);
          }
        t.expect(found, std::string(name) + "." + c + " missing");
      }
    } else {
      t.checks(bundle.checks, std::string(name) + ".pencil");
      t.checks(cd.bundle.checks, std::string(name) + ".conjugate_pencil");
    }
  }
}

// criterion 5
void family_case(Tally& t, const FamilyCase& fc) {
  const std::string& file = fc.file;
  FrobeniusSpec f = spec(file);
  const VarTable sv = VarTable::numbered("s", 2);
  const Rational d1 = f.degrees[0];
  ConjugationData cd = conjugate_pencil(assemble_qfpm(f), f.degrees);
  TransformResult tr = conjugate_potential(f, &cd);
  const Rational sign = fc.k % 2 == 0 ? 1 : -1;
  Expr want = parse_expr("1/2*s1*s2^2 + (" + to_string(Rational(sign * fc.c)) + ")*s1^(" + std::to_string(2 - fc.k) + ")", sv);
  t.expect(tr.potential == want, file + ": F~");
  InvolutionReport inv = involution_check(f);
  for (const auto& r : inv.checks)
    if (r.name == "double_conjugate_potential" || r.name == "double_degree_transform") t.expect(r.pass, file + "." + r.name);
  t.expect(potential_equality_check(f).equal, file + ": conjugate equals inversion");
  std::vector<Rational> dt = transform_degrees(f.degrees);
  t.expect(dt == std::vector<Rational>{-d1, 1}, file + ": degree transform");
  t.expect(transform_degrees(dt) == f.degrees, file + ": degree transform twice");
}

// criterion 6
void regularity_values(Tally& t) {
  auto diag = [](const Matrix& r, std::vector<Rational> want) {
    Matrix m = zero_matrix(want.size());
    for (std::size_t i = 0; i < want.size(); ++i) m[i][i] = RatExpr(want[i]);
    return r == m;
  };
  FrobeniusSpec r3 = spec("rank3_trivial");
  RegularityTensor a = regularity(r3, assemble_qfpm(r3));
  t.expect(diag(a.r, {Rational(1, 2), Rational(1, 2), Rational(1, 2)}) && a.regular, "rank 3: R = diag(1/2,1/2,1/2)");

  FrobeniusSpec m1 = spec("charge_minus_one");
  Report rep = run_command("verify", m1, "", {});
  RegularityTensor b = regularity(m1, assemble_qfpm(m1));
  t.expect(diag(b.r, {1, 0}) && !b.regular, "charge -1: R = diag(1,0), singular");
  t.expect(rep.doc["values"]["regularity"].value("prose_discrepancy", false), "charge -1: prose-discrepancy flag");

  FrobeniusSpec k4 = spec("family_k4_c1");
  RegularityTensor c = regularity(k4, assemble_qfpm(k4));
  t.expect(diag(c.r, {Rational(1, 3), Rational(2, 3)}), "k = 4: R = diag(1/3,2/3)");
}

// The s-chart metric of the charge -1 example against J Omega2 J^T, with J
// taken from jets of the s-map at t(s).
OracleIdentity charge_minus_one_pushforward() {
  const VarTable tv = VarTable::numbered("t", 2);
  const VarTable sv = VarTable::numbered("s", 2);
  const std::vector<Expr> forward = exprs({"-t1", "t2*t1^(-1)"}, tv);
  const std::vector<Expr> back = exprs({"-s1", "-s1*s2"}, sv);
  const Matrix omega_t = matrix({{"2*t1", "t2"}, {"t2", "4"}}, tv);
  const Matrix omega_s = matrix({{"-2*s1", "s2"}, {"s2", "4*s1^(-2)"}}, sv);
  return {"charge_minus_one_pushforward", "Omega2(s) = J Omega2(t) J^T", [=](const SamplePoint& p) {
            Point tp{{evaluate_exact(back[0], p.point), evaluate_exact(back[1], p.point)}, 0, 0};
            Rational j[2][2];
            for (int i = 0; i < 2; ++i) {
              Jet s = TaylorModel(RatExpr(forward[i]), 2, 1).at(tp);
              for (int a = 0; a < 2; ++a) j[i][a] = s.derivative(a).value();
            }
            std::vector<Rational> out;
            for (int i = 0; i < 2; ++i)
              for (int k = 0; k < 2; ++k) {
                Rational v = 0;
                for (int a = 0; a < 2; ++a)
                  for (int b = 0; b < 2; ++b) v += j[i][a] * evaluate_exact(omega_t[a][b], tp) * j[k][b];
                out.push_back(v - evaluate_exact(omega_s[i][k], p.point));
              }
            return out;
          }};
}

// criterion 7
void oracle_suite(Tally& t) {
  constexpr std::size_t kSamples = 20;
  constexpr std::uint64_t kSeed = 2024;
  std::vector<FrobeniusSpec> all{spec("charge_minus_one"), spec("rank3_trivial"), displayed_conjugate_of_charge_minus_one()};
  for (const auto& f : kFamily) all.push_back(spec(f.file));
  for (const auto& f : all) {
    OracleReport r = run_oracle(f, kSamples, kSeed);
    for (const auto& c : r.checks) {
      if (!c.applicable) continue;
      t.expect(c.pass && c.points >= kSamples, f.name + "." + c.name + (c.detail.empty() ? "" : ": " + c.detail));
    }
    OracleReport again = run_oracle(f, kSamples, kSeed, {r.checks.front().name});
    bool same = again.points.size() == r.points.size();
    for (std::size_t i = 0; same && i < r.points.size(); ++i) same = again.points[i].point.values == r.points[i].point.values;
    t.expect(same, f.name + ": sample points not reproducible");
  }
  OracleReport push = run_identities({charge_minus_one_pushforward()}, 2, 1, kSamples, kSeed);
  t.expect(push.passed(), "charge -1 pushforward");
}

// criterion 8
void property_fuzz(Tally& t) {
  t.expect(property::wdvv_fuzz(101, 100) == 100, "WDVV fuzz");
  t.expect(property::map_fuzz(102, 20) == 20, "coordinate-map round trips");
}

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<void(Tally&)> body;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "charge -1 example", 5, charge_minus_one},
      {2, "rank 3 trivial example", 10, rank3},
      {3, "pencil and QFPM axioms, original and conjugate", 0, [](Tally& t) { pencils(t, false); }},
      {4, "second Lie derivatives of the PBHT along e~ vanish", 0, [](Tally& t) { pencils(t, true); }},
      {5, "family 1/2 t2^2 t1 + c t1^k", 0, [](Tally& t) {
         for (const auto& f : kFamily) {
           auto start = std::chrono::steady_clock::now();
           family_case(t, f);
           double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
           t.expect(s < 5, f.file + ": took " + std::to_string(s) + " s");
         }
       }},
      {6, "regularity tensors", 0, regularity_values},
      {7, "oracle suite, 20 seeded exact points", 0, oracle_suite},
      {8, "property fuzz", 60, property_fuzz},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Tally t;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0) t.expect(s < c.limit_seconds, "runtime " + std::to_string(s) + " s");
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", s);
    std::cout << "criterion " << c.number << ": " << (t.ok() ? "PASS" : "FAIL") << "  " << c.title << " (" << time
              << ")";
    if (!t.ok()) std::cout << "  [" << t.summary() << "]";
    std::cout << "\n";
    failed += t.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
