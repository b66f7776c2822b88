#pragma once

// Independent re-validation of the symbolic identities at seeded exact
// rational sample points. Each identity is recomputed with jets from the
// derivatives of its inputs (the potential, the coordinate maps) and compared
// with the symbolic result, or checked to vanish outright.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frobkit/frobenius.hpp"

namespace frobkit {

/// A random point of a chart: x1 = ρ^L with ρ a positive rational, small
/// rationals elsewhere, and free values for log(x1), log(-1) and the pencil
/// parameter λ.
struct SamplePoint {
  Point point;
  Rational rho;
  Rational lambda;
};

struct OracleIdentity {
  std::string name;
  std::string what;
  /// Residual components at a sample point; all zero when the identity holds.
  std::function<std::vector<Rational>(const SamplePoint&)> residual;
};

struct OracleCheck {
  std::string name;
  std::string what;
  std::size_t points = 0;   // points at which the residual vanished
  std::size_t redraws = 0;  // points replaced because a denominator vanished
  bool pass = false;
  bool applicable = true;
  std::string detail;
};

struct OracleReport {
  std::uint64_t seed = 0;
  std::int64_t root_order = 1;  // L in x1 = ρ^L
  std::vector<SamplePoint> points;
  std::vector<OracleCheck> checks;

  [[nodiscard]] bool passed() const;
};

/// Every identity that the symbolic pipeline asserts for this spec, with the
/// lcm L of all fractional exponent denominators involved.
struct OracleRegistry {
  std::vector<OracleIdentity> identities;
  std::vector<OracleCheck> skipped;  // identities whose hypotheses do not hold
  std::int64_t root_order = 1;
};

OracleRegistry oracle_registry(const FrobeniusSpec& spec);

/// Draws `samples` points with a mt19937_64 seeded by `seed` and evaluates
/// every identity (or those named in `only`) at all of them.
OracleReport run_oracle(const FrobeniusSpec& spec, std::size_t samples, std::uint64_t seed,
                        const std::vector<std::string>& only = {});

/// The same sampling applied to a caller-built list of identities.
OracleReport run_identities(const std::vector<OracleIdentity>& identities, std::size_t rank, std::int64_t root_order,
                            std::size_t samples, std::uint64_t seed);

}  // namespace frobkit
