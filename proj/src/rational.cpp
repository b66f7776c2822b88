#include "frobkit/rational.hpp"

#include <limits>
#include <numeric>

namespace frobkit {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("exponent overflow");
  return static_cast<std::int64_t>(v);
}

Exponent make_exponent(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("zero exponent denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Exponent(narrow(num), narrow(den));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  Integer n{std::string(num)};
  Integer d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::optional<Rational> exact_root(const Rational& value, unsigned long q) {
  if (value < 0) return std::nullopt;
  if (q == 1) return value;
  Integer num, den;
  if (mpz_root(num.get_mpz_t(), value.get_num_mpz_t(), q) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), value.get_den_mpz_t(), q) == 0) return std::nullopt;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow_int(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("division by zero");
    Rational inv = 1 / base;
    return pow_int(inv, -exponent);
  }
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Exponent::Exponent(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 0) throw std::domain_error("zero exponent denominator");
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  if (den < 0) g = -g;
  num_ = num / g;
  den_ = den / g;
}

Exponent::Exponent(const Rational& q) {
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
    throw std::overflow_error("exponent overflow");
  num_ = q.get_num().get_si();
  den_ = q.get_den().get_si();
}

Exponent operator+(Exponent a, Exponent b) {
  return make_exponent(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                       static_cast<__int128>(a.den_) * b.den_);
}

Exponent operator-(Exponent a, Exponent b) { return a + (-b); }

Exponent operator*(Exponent a, Exponent b) {
  return make_exponent(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

bool Exponent::less_numeric(const Exponent& other) const {
  return static_cast<__int128>(num_) * other.den_ < static_cast<__int128>(other.num_) * den_;
}

std::string Exponent::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace frobkit
