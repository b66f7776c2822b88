#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace frobkit {

// Reduced arbitrary-precision rational; gmpxx keeps the denominator positive
// and the fraction canonical after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" (optional leading sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Exact q-th root of a nonnegative rational, if it exists.
std::optional<Rational> exact_root(const Rational& value, unsigned long q);

Rational pow_int(const Rational& base, long exponent);

/// Small exact exponent carried by the distinguished variable. Always reduced
/// with a positive denominator so that defaulted comparison is well defined.
class Exponent {
 public:
  constexpr Exponent() = default;
  Exponent(std::int64_t num, std::int64_t den = 1);
  explicit Exponent(const Rational& q);

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] bool is_zero() const { return num_ == 0; }
  [[nodiscard]] Rational to_rational() const { return Rational(num_, den_); }

  friend Exponent operator+(Exponent a, Exponent b);
  friend Exponent operator-(Exponent a, Exponent b);
  friend Exponent operator*(Exponent a, Exponent b);
  friend Exponent operator-(Exponent a) { return Exponent(-a.num_, a.den_); }

  friend bool operator==(const Exponent&, const Exponent&) = default;
  /// Representation order (not numeric order); only used for canonical keys.
  friend auto operator<=>(const Exponent&, const Exponent&) = default;
  [[nodiscard]] bool less_numeric(const Exponent& other) const;

  [[nodiscard]] std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace frobkit
