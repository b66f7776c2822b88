#include <doctest.h>

#include "fixtures.hpp"
#include "frobkit/conjugate.hpp"

using namespace frobkit;

namespace {

Expr S(std::string_view text, std::size_t rank) { return parse_expr(text, VarTable::numbered("s", rank)); }

bool all_ok(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    INFO(c.name << ": " << c.detail << (c.witness ? " witness " + to_string(*c.witness, VarTable::numbered("t", 4)) : ""));
    CHECK((c.pass || !c.gating()));
  }
  return all_passed(checks);
}

}  // namespace

TEST_CASE("degree transform") {
  std::vector<Rational> d{Rational(2, 3), Rational(1, 3), 1};
  std::vector<Rational> want{Rational(-2, 3), Rational(-1, 3), 1};
  CHECK(transform_degrees(d) == want);
  CHECK(transform_degrees(transform_degrees(d)) == d);
}

TEST_CASE("conjugate pencil on the bundled examples") {
  for (const auto& spec : {fixtures::rank3_trivial(), fixtures::family(4, 1), fixtures::family(5, Rational(3, 2)),
                           fixtures::family(7, 1), fixtures::charge_minus_one()}) {
    CAPTURE(spec.name);
    QfpmBundle b = assemble_qfpm(spec);
    ConjugationData c = conjugate_pencil(b, spec.degrees);
    CHECK(all_ok(c.checks));
    CHECK(all_ok(c.bundle.checks));
    CHECK(c.degree_tilde == 2 - spec.charge);
    CHECK(c.degrees_tilde == transform_degrees(spec.degrees));
  }
}

TEST_CASE("conjugate pencil for charge -1") {
  ConjugationData c = conjugate_pencil(assemble_qfpm(fixtures::charge_minus_one()));
  VarTable t = VarTable::numbered("t", 2);
  CHECK(c.omega1_tilde.entries() == to_matrix({{parse_expr("0", t), parse_expr("-t1", t)},
                                               {parse_expr("-t1", t), parse_expr("-2*t2", t)}}));
  Matrix r = zero_matrix(2);
  r[0][0] = RatExpr(1);
  CHECK(c.regularity.r == r);
  // R~ is not -R: its eigenvalues are -d1/2 and 1 + d1/2, so the conjugate is regular
  CHECK_FALSE(c.regularity_tilde.r == RatExpr(-1) * r);
  CHECK(c.regularity_tilde.determinant == RatExpr(-2));
  CHECK(c.regularity_tilde.regular);
  CHECK_FALSE(c.regularity.regular);
}

TEST_CASE("conjugate regularity spectrum") {
  // det R~ = -d1/2 (1 + d1/2) with d1 = 2/(k-1)
  for (int k : {4, 5, 7}) {
    CAPTURE(k);
    FrobeniusSpec s = fixtures::family(k, 1);
    ConjugationData c = conjugate_pencil(assemble_qfpm(s), s.degrees);
    Rational h = s.degrees[0] / 2;
    CHECK(c.regularity_tilde.determinant == RatExpr(-h * (1 + h)));
    CHECK(c.regularity.determinant == RatExpr(h * (1 - h)));
  }
}

TEST_CASE("charge 1 is ineligible") {
  FrobeniusSpec s = fixtures::make_spec("d1", "1/2*t2^2*t1", 1, {0, 1});
  CHECK_THROWS_AS(conjugate_pencil(assemble_qfpm(s)), IneligibleError);
  CHECK_THROWS_AS(conjugate_coordinates(s), IneligibleError);
}

TEST_CASE("conjugate coordinates") {
  std::vector<Rational> d{Rational(2, 3), Rational(1, 3), 1};
  CoordinateMap m = conjugate_map_from_degrees(d);
  CHECK(m.jacobian() == conjugate_jacobian_closed_form(d));
  CoordinateMap r3 = conjugate_coordinates(fixtures::rank3_trivial());
  CHECK(r3.inverse()[1] == S("-s1*s2", 3));
  CHECK(r3.inverse()[2] == S("s1^2*s3 + 1/2*s1*s2^2", 3));
  // non-strict charge -1 is refused by the validated builder
  CHECK_THROWS_AS(conjugate_coordinates(fixtures::charge_minus_one()), IneligibleError);
}

TEST_CASE("conjugate potential") {
  FrobeniusSpec r3 = fixtures::rank3_trivial();
  ConjugationData pencil = conjugate_pencil(assemble_qfpm(r3), r3.degrees);
  TransformResult c = conjugate_potential(r3, &pencil);
  CHECK(c.potential == S("-1/6*s1^(-1) + 1/2*s2^2*s1^(-1) + 1/8*s2^4*s1^(-1) + 1/2*s2^2*s3 + 1/2*s1*s3^2", 3));
  CHECK(all_ok(c.checks));
  Matrix pushed = c.metric.entries();
  CHECK(pushed[0][0] == RatExpr(S("-s1", 3)));
  CHECK(pushed[0][1].is_zero());
  CHECK(pushed[0][2] == RatExpr(S("s3", 3)));

  for (int k : {4, 5, 7}) {
    for (Rational cc : {Rational(1), Rational(3, 2)}) {
      FrobeniusSpec s = fixtures::family(k, cc);
      CAPTURE(k);
      ConjugationData p = conjugate_pencil(assemble_qfpm(s), s.degrees);
      TransformResult t = conjugate_potential(s, &p);
      Rational sign = k % 2 == 0 ? 1 : -1;
      Expr want = S("1/2*s1*s2^2", 2) + Expr(sign * cc) * pow(Expr::variable(0), Exponent(2 - k));
      CHECK(t.potential == want);
      CHECK(all_ok(t.checks));
    }
  }
}

TEST_CASE("inversion symmetry") {
  TransformResult inv = inversion_symmetry(fixtures::charge_minus_one());
  VarTable z = VarTable::numbered("z", 2);
  CHECK(inv.potential == parse_expr("1/2*z1*z2^2 - log(z1) + log(-1)", z));
  CHECK(all_ok(inv.checks));
  QuasihomogeneityReport q = quasihomogeneity_check(inv.potential, inv.target.euler(), inv.target.charge);
  CHECK(q.quadratic);
  CHECK_FALSE(q.strict);
  CHECK(q.c == 2);

  FrobeniusSpec r3 = fixtures::rank3_trivial();
  CHECK(inversion_symmetry(r3).potential == conjugate_potential(r3).potential);
}

TEST_CASE("involution") {
  for (const auto& spec : {fixtures::rank3_trivial(), fixtures::family(4, 1), fixtures::family(5, Rational(3, 2)),
                           fixtures::family(7, 1)}) {
    CAPTURE(spec.name);
    InvolutionReport r = involution_check(spec);
    CHECK(all_ok(r.checks));
    CHECK(r.passed());
  }
  InvolutionReport r = involution_check(fixtures::charge_minus_one());
  CHECK(r.passed());
  CHECK(r.pencil_sign == -1);
  CHECK(involution_check(fixtures::family(4, 1)).pencil_sign == -1);
  CHECK(involution_check(fixtures::family(5, 1)).pencil_sign == 1);
}

TEST_CASE("potential equality") {
  for (const auto& spec : {fixtures::rank3_trivial(), fixtures::family(4, 1), fixtures::family(7, Rational(3, 2))}) {
    CAPTURE(spec.name);
    EqualityReport e = potential_equality_check(spec);
    CHECK(e.mode == "exact");
    CHECK(e.equal);
    CHECK(e.passed());
  }
  EqualityReport e = potential_equality_check(fixtures::charge_minus_one());
  CHECK_FALSE(e.equal);
  CHECK(e.equivalent_structure);
  CHECK(e.mode == "equivalent-structure, potentials differ");
  CHECK(e.passed());
}
