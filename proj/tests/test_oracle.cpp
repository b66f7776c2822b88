#include <doctest.h>

#include "fixtures.hpp"
#include "frobkit/jet.hpp"
#include "frobkit/oracle.hpp"

using namespace frobkit;

namespace {

std::string failures(const OracleReport& r) {
  std::string out;
  for (const auto& c : r.checks)
    if (c.applicable && !c.pass) out += c.name + ": " + c.detail + "\n";
  return out;
}

}  // namespace

TEST_CASE("evaluate_exact examples") {
  VarTable t = VarTable::numbered("t", 2);
  CHECK(evaluate_exact(parse_expr("t1^(1/2)", t), Point{{Rational(9, 4)}, 0, 0}) == Rational(3, 2));
  CHECK(evaluate_exact(parse_expr("t1^2*log(t1)", t), Point{{2}, 5, 0}) == 20);
  CHECK(evaluate_exact(parse_expr("t1*t2", t), Point{{2, 3}, 0, 0}) == 6);
  // (-1)^(5/3) = (-1)^5 at t1 = -rho^3
  Expr s = substitute(parse_expr("t1^(5/3)", t), Substitution({-Expr::variable(0)}));
  CHECK(evaluate_exact(s, Point{{8}, 0, 0}) == -32);
  CHECK(evaluate_exact(parse_expr("t1^(5/3)", t), Point{{-8}, 0, 0}) == -32);
}

TEST_CASE("jets") {
  VarTable t = VarTable::numbered("t", 2);
  Point p{{2, 3}, 0, 0};
  Jet f = TaylorModel(parse_expr("t1^3*t2 + t2^2", t), 2, 4).at(p);
  CHECK(f.value() == 8 * 3 + 9);
  CHECK(f.derivative(0).value() == 3 * 4 * 3);
  CHECK(f.derivative(0).derivative(0).derivative(1).value() == 6 * 2);
  Jet x = Jet::coordinate(f.space(), 0, 2);
  CHECK((x * x.inverse()).derivative(0).value() == 0);
  CHECK_THROWS_AS((void)x.pow(Rational(1, 2)), DomainError);  // 2 has no rational square root
  Jet y = Jet::coordinate(f.space(), 0, 4);
  Jet root = y.pow(Rational(1, 2));
  CHECK(root.value() == 2);
  CHECK(root.derivative(0).value() == Rational(1, 4));
  CHECK((root * root - y).is_zero());
  // a quotient model
  RatExpr q = RatExpr::quotient(parse_expr("t2", t), parse_expr("t1 + t2", t));
  Jet qj = TaylorModel(q, 2, 3).at(p);
  CHECK(qj.value() == Rational(3, 5));
  CHECK(qj.derivative(1).value() == Rational(2, 25));
}

TEST_CASE("jet geometry agrees with known metrics") {
  auto sp = JetSpace::get(2, 4);
  // polar coordinates: Ω = diag(1, t1^-2) is flat
  JetMatrix flat{{Jet::constant(sp, 1), Jet::constant(sp, 0)},
                 {Jet::constant(sp, 0), Jet::coordinate(sp, 0, 3).pow(Rational(-2))}};
  for (const auto& r : jet_riemann(flat)) CHECK(r.value() == 0);
  // Ω = diag(1, t1) has curvature -3/(4 t1²); Ω = diag(t1², t1²) is the hyperbolic plane
  JetMatrix bent{{Jet::constant(sp, 1), Jet::constant(sp, 0)}, {Jet::constant(sp, 0), Jet::coordinate(sp, 0, 3)}};
  bool bent_nonzero = false;
  for (const auto& r : jet_riemann(bent)) bent_nonzero = bent_nonzero || r.value() != 0;
  CHECK(bent_nonzero);
  JetMatrix curved{{Jet::coordinate(sp, 0, 2) * Jet::coordinate(sp, 0, 2), Jet::constant(sp, 0)},
                   {Jet::constant(sp, 0), Jet::coordinate(sp, 0, 2) * Jet::coordinate(sp, 0, 2)}};
  bool nonzero = false;
  for (const auto& r : jet_riemann(curved)) nonzero = nonzero || r.value() != 0;
  CHECK(nonzero);
}

TEST_CASE("oracle on the bundled examples") {
  for (const auto& spec : {fixtures::charge_minus_one(), fixtures::rank3_trivial(), fixtures::family(4, 1),
                           fixtures::family(5, Rational(3, 2)), fixtures::family(7, 1)}) {
    CAPTURE(spec.name);
    OracleReport r = run_oracle(spec, 20, 7);
    INFO(failures(r));
    CHECK(r.passed());
    CHECK(r.points.size() == 20);
    for (const auto& c : r.checks)
      if (c.applicable) CHECK(c.points == 20);
  }
}

TEST_CASE("oracle is deterministic and detects false identities") {
  FrobeniusSpec s = fixtures::family(4, 1);
  OracleReport a = run_oracle(s, 20, 7, {"wdvv", "conjugate_potential"});
  OracleReport b = run_oracle(s, 20, 7, {"wdvv", "conjugate_potential"});
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].point.values == b.points[i].point.values);
  CHECK(a.checks.size() == 2);
  CHECK(a.root_order == 1);
  CHECK(oracle_registry(fixtures::make_spec("frac", "1/2*t2^2*t1 + t1^(7/3)", Rational(-1, 3), {Rational(4, 3), 1}))
            .root_order % 3 == 0);

  std::vector<OracleIdentity> wrong{{"wrong", "t1 = t2", [](const SamplePoint& p) {
                                       return std::vector<Rational>{p.point.values[0] - p.point.values[1]};
                                     }}};
  OracleReport w = run_identities(wrong, 2, 1, 20, 3);
  CHECK_FALSE(w.passed());

  // a potential that fails WDVV
  FrobeniusSpec bad = fixtures::make_spec("bad", "1/2*t3^2*t1 + 1/2*t2^2*t3 + t1*t2^3", 0, {1, 1, 1});
  OracleReport br = run_oracle(bad, 20, 1, {"wdvv"});
  CHECK_FALSE(br.passed());
}
