#pragma once

// Random inputs for the property fuzz: rank 2 polynomial potentials and
// triangular polynomial coordinate changes with exact inverses.

#include <random>
#include <string>

#include "frobkit/frobenius.hpp"
#include "frobkit/geometry.hpp"

namespace property {

using frobkit::Expr;
using frobkit::Rational;

inline Rational small_rational(std::mt19937_64& rng, long lo = -5, long hi = 5) {
  std::uniform_int_distribution<long> num(lo, hi), den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Rational nonzero_rational(std::mt19937_64& rng) {
  Rational q;
  do q = small_rational(rng); while (q == 0);
  return q;
}

inline Expr power(std::size_t var, int k) {
  Expr out(1);
  for (int i = 0; i < k; ++i) out = out * Expr::variable(var);
  return out;
}

/// Random polynomial in the first `vars` variables of total degree <= `degree`.
inline Expr random_polynomial(std::mt19937_64& rng, std::size_t vars, int degree) {
  Expr out;
  std::bernoulli_distribution keep(0.5);
  if (vars == 1) {
    for (int i = 0; i <= degree; ++i)
      if (keep(rng)) out += small_rational(rng) * power(0, i);
    return out;
  }
  for (int i = 0; i <= degree; ++i)
    for (int j = 0; i + j <= degree; ++j)
      if (keep(rng)) out += small_rational(rng) * power(0, i) * power(1, j);
  return out;
}

struct Potential {
  Expr f;
  frobkit::RationalMatrix metric;
};

/// F = a t2³ + b t1 t2² + c t1² t2 + G(t1), deg G <= 6, with d2 di dj F
/// constant and invertible.
inline Potential random_rank2_potential(std::mt19937_64& rng) {
  for (;;) {
    Rational a = small_rational(rng), b = small_rational(rng), c = small_rational(rng);
    if (12 * a * c - 4 * b * b == 0) continue;
    Expr f = a * power(1, 3) + b * power(0, 1) * power(1, 2) + c * power(0, 2) * power(1, 1) +
             random_polynomial(rng, 1, 6);
    return {f, frobkit::flat_metric_from_potential(f, 2)};
  }
}

/// s1 = a t1 + b, s2 = c t2 + p(t1), s3 = e t3 + q(t1, t2).
inline frobkit::CoordinateMap random_triangular_map(std::mt19937_64& rng, std::size_t rank) {
  std::vector<Expr> forward, inverse;
  for (std::size_t i = 0; i < rank; ++i) {
    Rational k = nonzero_rational(rng);
    Expr shift = i == 0 ? Expr(small_rational(rng)) : random_polynomial(rng, i, 3);
    forward.push_back(k * Expr::variable(i) + shift);
    // t_i = (s_i - shift(t(s))) / k, with the earlier t_j(s) already known
    std::vector<Expr> images(inverse.begin(), inverse.end());
    Expr back = Expr::variable(i) - frobkit::substitute(shift, frobkit::Substitution(images));
    Rational inv = 1 / k;
    inverse.push_back(inv * back);
  }
  return {forward, inverse};
}

/// Symmetric contravariant metric with polynomial entries.
inline frobkit::Matrix random_metric(std::mt19937_64& rng, std::size_t rank) {
  frobkit::Matrix m(rank, std::vector<frobkit::RatExpr>(rank));
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i; j < rank; ++j) {
      Expr e = random_polynomial(rng, std::min<std::size_t>(rank, 2), 2);
      if (i == j) e += Expr(nonzero_rational(rng));
      m[i][j] = m[j][i] = frobkit::RatExpr(e);
    }
  return m;
}

/// Number of potentials (out of n) whose WDVV residual vanishes identically.
inline std::size_t wdvv_fuzz(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Potential p = random_rank2_potential(rng);
    if (!frobkit::wdvv_residual(p.f, p.metric).first_nonzero()) ++ok;
  }
  return ok;
}

/// Number of maps (out of n) for which push-forward then pull-back returns
/// the metric and the map composed with its inverse is the identity.
inline std::size_t map_fuzz(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rank = 2 + i % 2;
    frobkit::CoordinateMap map = random_triangular_map(rng, rank);
    frobkit::Matrix omega = random_metric(rng, rank);
    bool good = frobkit::pushforward(frobkit::pushforward(omega, map), map.inverted()) == omega;
    std::vector<Expr> images(map.inverse().begin(), map.inverse().end());
    for (std::size_t k = 0; k < rank; ++k)
      good = good && frobkit::substitute(map.forward()[k], frobkit::Substitution(images)) == Expr::variable(k);
    if (good) ++ok;
  }
  return ok;
}

}  // namespace property
