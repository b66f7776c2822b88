#pragma once

#include <string>
#include <vector>

#include "frobkit/frobenius.hpp"

namespace fixtures {

inline frobkit::FrobeniusSpec make_spec(std::string name, const std::string& potential, frobkit::Rational charge,
                                        std::vector<frobkit::Rational> degrees) {
  frobkit::FrobeniusSpec s;
  s.name = std::move(name);
  s.rank = degrees.size();
  s.charge = charge;
  s.degrees = std::move(degrees);
  s.euler_constants.assign(s.rank, frobkit::Rational(0));
  s.metric = frobkit::antidiagonal(s.rank);
  s.variables = frobkit::VarTable::numbered("t", s.rank);
  s.potential = frobkit::parse_expr(potential, s.variables);
  return s;
}

inline frobkit::FrobeniusSpec charge_minus_one() {
  return make_spec("charge_minus_one", "1/2*t2^2*t1 + t1^2*log(t1)", -1, {2, 1});
}

inline frobkit::FrobeniusSpec rank3_trivial() {
  return make_spec("rank3_trivial", "1/6*t1^3 - 1/2*t2^2*t1 + 1/2*t2^2*t3 + 1/2*t1*t3^2", 0, {1, 1, 1});
}

/// F = ½ t2² t1 + c t1^k, d1 = 2/(k-1), d = 1 - d1.
inline frobkit::FrobeniusSpec family(int k, const frobkit::Rational& c) {
  frobkit::Rational d1(2, k - 1);
  d1.canonicalize();
  return make_spec("family_k" + std::to_string(k), "1/2*t2^2*t1 + " + c.get_str() + "*t1^" + std::to_string(k),
                   1 - d1, {d1, 1});
}

}  // namespace fixtures
