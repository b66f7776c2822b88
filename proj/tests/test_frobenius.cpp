#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace frobkit;

namespace {

RatExpr T(std::string_view text) { return RatExpr(parse_expr(text, VarTable::numbered("t", 3))); }

Matrix M(std::initializer_list<std::initializer_list<const char*>> rows) {
  Matrix out;
  for (auto row : rows) {
    out.emplace_back();
    for (const char* x : row) out.back().push_back(T(x));
  }
  return out;
}

}  // namespace

TEST_CASE("flat metric from potential") {
  CHECK(flat_metric_from_potential(fixtures::charge_minus_one().potential, 2) == antidiagonal(2));
  CHECK(flat_metric_from_potential(fixtures::rank3_trivial().potential, 3) == antidiagonal(3));
  // d_2^3 t2^3 = 6 is constant, so t2^3 alone fails through singularity
  CHECK_THROWS_AS(flat_metric_from_potential(parse_expr("t2^3", VarTable::numbered("t", 2)), 2), SingularMatrixError);
  CHECK_THROWS_AS(flat_metric_from_potential(parse_expr("1/2*t2^2*t1 + t2^4", VarTable::numbered("t", 2)), 2),
                  SpecError);
  CHECK(standard_form_defect(fixtures::rank3_trivial().potential, 3).is_zero());
  CHECK(standard_form_defect(fixtures::charge_minus_one().potential, 2).is_zero());
  CHECK_FALSE(standard_form_defect(parse_expr("1/2*t2^2*t1 + t2^3", VarTable::numbered("t", 2)), 2).is_zero());
}

TEST_CASE("WDVV residual") {
  CHECK(wdvv_residual(fixtures::charge_minus_one().potential, antidiagonal(2)).is_zero());
  CHECK(wdvv_residual(fixtures::rank3_trivial().potential, antidiagonal(3)).is_zero());
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> c(-4, 4);
  VarTable t2 = VarTable::numbered("t", 2);
  for (int i = 0; i < 5; ++i) {
    Expr f = parse_expr("1/2*t2^2*t1", t2) + Expr(c(rng)) * parse_expr("t1^5", t2) +
             Expr(c(rng)) * parse_expr("t2^3", t2) + Expr(c(rng)) * parse_expr("t1^2*t2", t2);
    CHECK(wdvv_residual(f, flat_metric_from_potential(f, 2)).is_zero());
  }
  VarTable t3 = VarTable::numbered("t", 3);
  WdvvResidual bad = wdvv_residual(parse_expr("1/2*t3^2*t1 + 1/2*t2^2*t3 + t1*t2^3", t3), antidiagonal(3));
  REQUIRE_FALSE(bad.is_zero());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t q = 0; q < 3; ++q)
        for (std::size_t n = 0; n < 3; ++n) CHECK(bad(i, j, q, n) == -bad(n, j, q, i));
}

TEST_CASE("quasihomogeneity") {
  FrobeniusSpec s = fixtures::charge_minus_one();
  QuasihomogeneityReport q = quasihomogeneity_check(s.potential, s.euler(), s.charge);
  CHECK(q.quadratic);
  CHECK_FALSE(q.strict);
  CHECK(q.a[0][0] == 4);
  CHECK(q.residual == parse_expr("2*t1^2", s.variables));
  FrobeniusSpec r = fixtures::rank3_trivial();
  CHECK(quasihomogeneity_check(r.potential, r.euler(), r.charge).strict);
  VarTable t2 = VarTable::numbered("t", 2);
  CHECK(quasihomogeneity_check(parse_expr("t1^3", t2), {T("t1"), RatExpr()}, 0).strict);
  QuasihomogeneityReport cubic = quasihomogeneity_check(parse_expr("t1^3 + t2^3", t2), {T("t1"), RatExpr()}, 0);
  CHECK_FALSE(cubic.quadratic);
  CHECK(cubic.offending == parse_expr("-3*t2^3", t2));
  QuasihomogeneityReport lin = quasihomogeneity_check(parse_expr("t1^3 + t1*t2 + t2 + 7", t2), {T("t1"), T("t2")}, 0);
  CHECK(lin.quadratic);
  CHECK(lin.a[0][1] == -1);
  CHECK(lin.b[1] == -2);
  CHECK(lin.c == -21);
}

TEST_CASE("intersection form") {
  CHECK(intersection_form(fixtures::charge_minus_one(), false).entries() == M({{"2*t1", "t2"}, {"t2", "4"}}));
  FrobeniusSpec r = fixtures::rank3_trivial();
  Matrix want = M({{"t1", "t2", "t3"}, {"t2", "t3 - t1", "-t2"}, {"t3", "-t2", "t1"}});
  CHECK(intersection_form(r, true).entries() == want);
  CHECK(intersection_form_shortcut(r) == want);
  CHECK(intersection_form_shortcut(fixtures::family(4, 1)) == intersection_form(fixtures::family(4, 1), false).entries());
}

TEST_CASE("assemble_qfpm on the bundled examples") {
  for (const FrobeniusSpec& s : {fixtures::charge_minus_one(), fixtures::rank3_trivial(), fixtures::family(4, 1),
                                 fixtures::family(5, Rational(3, 2))}) {
    CAPTURE(s.name);
    QfpmBundle b = assemble_qfpm(s);
    for (const auto& c : b.checks) {
      CAPTURE(c.name);
      CHECK(c.pass);
    }
    CHECK(b.eligible);
    CHECK(b.tau == T("t1"));
    CHECK(frobkit::apply(b.euler, b.tau) == RatExpr(1 - s.charge) * b.tau);
    CHECK(b.find("gamma_i1") != nullptr);
  }
  CHECK(tau_alternative(antidiagonal(3)) == parse_expr("t3", VarTable::numbered("t", 3)));
  FrobeniusSpec one = fixtures::make_spec("charge_one", "1/2*t2^2*t1", 1, {0, 1});
  CHECK_FALSE(assemble_qfpm(one).eligible);
}

TEST_CASE("regularity") {
  FrobeniusSpec r = fixtures::rank3_trivial();
  RegularityTensor rr = regularity(r, assemble_qfpm(r));
  Rational h(1, 2);
  CHECK(rr.r == to_matrix(RationalMatrix{{h, 0, 0}, {0, h, 0}, {0, 0, h}}));
  CHECK(rr.regular);
  CHECK(rr.matches_diagonal);
  FrobeniusSpec c = fixtures::charge_minus_one();
  RegularityTensor rc = regularity(c, assemble_qfpm(c));
  CHECK(rc.r == to_matrix(RationalMatrix{{1, 0}, {0, 0}}));
  CHECK_FALSE(rc.regular);
  CHECK(rc.diagonal == std::vector<Rational>{1, 0});
  FrobeniusSpec f = fixtures::family(4, 1);
  RegularityTensor rf = regularity(f, assemble_qfpm(f));
  CHECK(rf.r == to_matrix(RationalMatrix{{Rational(1, 3), 0}, {0, Rational(2, 3)}}));
  CHECK(rf.matches_diagonal);
}

TEST_CASE("degree duality") {
  CHECK(degree_duality(fixtures::rank3_trivial()).pass);
  CHECK(degree_duality(fixtures::charge_minus_one()).pass);
  FrobeniusSpec bad = fixtures::make_spec("bad", "1/2*t2^2*t1", 0, {Rational(1, 2), 1});
  DegreeDualityReport rep = degree_duality(bad);
  CHECK_FALSE(rep.pass);
  CHECK(rep.violations.size() == 1);
}
