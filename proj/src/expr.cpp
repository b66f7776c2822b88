#include "frobkit/expr.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace frobkit {

namespace {

std::int32_t checked_add(std::int32_t a, std::int32_t b) {
  std::int64_t s = static_cast<std::int64_t>(a) + b;
  if (s > std::numeric_limits<std::int32_t>::max() || s < std::numeric_limits<std::int32_t>::min())
    throw std::overflow_error("monomial exponent overflow");
  return static_cast<std::int32_t>(s);
}

// Sorted-merge of two canonical term lists with sign applied to the second.
std::vector<Expr::Term> merge(const std::vector<Expr::Term>& a, const std::vector<Expr::Term>& b, bool negate) {
  std::vector<Expr::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, negate ? Rational(-j->second) : j->second);
      ++j;
    } else {
      Rational c = negate ? Rational(i->second - j->second) : Rational(i->second + j->second);
      if (c != 0) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

Rational signed_root_power(const Rational& c, Exponent e) {
  if (e.is_integer()) return pow_int(c, e.num());
  const auto q = static_cast<unsigned long>(e.den());
  Rational magnitude = c < 0 ? Rational(-c) : c;
  auto root = exact_root(magnitude, q);
  if (!root) throw DomainError("coefficient " + c.get_str() + " has no exact rational root of order " + std::to_string(q));
  Rational value = pow_int(*root, e.num());
  if (c < 0) {
    if (q % 2 == 0) throw BranchError("even root of a negative coefficient: (" + c.get_str() + ")^(" + e.to_string() + ")");
    if (e.num() % 2 != 0) value = -value;
  }
  return value;
}

Monomial power_monomial(const Monomial& m, Exponent e) {
  Monomial out;
  out.lead = m.lead * e;
  for (std::size_t i = 0; i < m.rest.size(); ++i) {
    if (m.rest[i] == 0) continue;
    Exponent r = Exponent(m.rest[i]) * e;
    if (!r.is_integer()) throw DomainError("fractional exponent on non-distinguished variable");
    if (r.num() > std::numeric_limits<std::int32_t>::max() || r.num() < std::numeric_limits<std::int32_t>::min())
      throw std::overflow_error("monomial exponent overflow");
    out.rest[i] = static_cast<std::int32_t>(r.num());
  }
  if (m.has_transcendental()) {
    if (!e.is_integer() || e.num() < 0) throw DomainError("non-integer or negative power of a logarithm");
    out.logpow = static_cast<std::uint16_t>(m.logpow * e.num());
    out.branchpow = static_cast<std::uint16_t>(m.branchpow * e.num());
  }
  return out;
}

Expr pow_sum(const Expr& base, std::int64_t n) {
  Expr result(1);
  Expr square = base;
  while (n > 0) {
    if (n & 1) result *= square;
    n >>= 1;
    if (n > 0) square = square * square;
  }
  return result;
}

Rational power_of_value(const Rational& x, Exponent e) {
  if (x == 0) {
    if (e.num() < 0) throw DivisionByZero("zero raised to a negative power");
    return e.is_zero() ? Rational(1) : Rational(0);
  }
  if (e.is_integer()) return pow_int(x, e.num());
  const auto q = static_cast<unsigned long>(e.den());
  if (x < 0 && q % 2 == 0) throw BranchError("even root of a negative sample value");
  Rational magnitude = x < 0 ? Rational(-x) : x;
  auto root = exact_root(magnitude, q);
  if (!root) throw DomainError("sample value " + x.get_str() + " is not a perfect power of order " + std::to_string(q));
  Rational value = pow_int(*root, e.num());
  if (x < 0 && e.num() % 2 != 0) value = -value;
  return value;
}

}  // namespace

bool Monomial::is_one() const {
  if (!lead.is_zero() || has_transcendental()) return false;
  return std::all_of(rest.begin(), rest.end(), [](std::int32_t e) { return e == 0; });
}

Rational Monomial::total_degree() const {
  Rational d = lead.to_rational();
  for (std::int32_t e : rest) d += e;
  return d;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.lead = a.lead + b.lead;
  for (std::size_t i = 0; i < m.rest.size(); ++i) m.rest[i] = checked_add(a.rest[i], b.rest[i]);
  m.logpow = static_cast<std::uint16_t>(a.logpow + b.logpow);
  m.branchpow = static_cast<std::uint16_t>(a.branchpow + b.branchpow);
  return m;
}

Expr::Expr(long value) {
  if (value != 0) terms_.emplace_back(Monomial{}, Rational(value));
}

Expr::Expr(const Rational& value) {
  if (value != 0) terms_.emplace_back(Monomial{}, value);
}

Expr Expr::variable(std::size_t index) {
  if (index >= kMaxVariables) throw DomainError("variable index out of range");
  Monomial m;
  if (index == 0)
    m.lead = Exponent(1);
  else
    m.rest[index - 1] = 1;
  return term(m, 1);
}

Expr Expr::term(const Monomial& m, const Rational& coefficient) {
  Expr e;
  if (coefficient != 0) {
    e.terms_.emplace_back(m, coefficient);
    e.terms_.back().second.canonicalize();
  }
  return e;
}

Expr Expr::log_lead() {
  Monomial m;
  m.logpow = 1;
  return term(m, 1);
}

Expr Expr::branch_constant() {
  Monomial m;
  m.branchpow = 1;
  return term(m, 1);
}

Expr Expr::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  Expr e;
  e.terms_.reserve(terms.size());
  for (auto& t : terms) {
    t.second.canonicalize();
    if (!e.terms_.empty() && e.terms_.back().first == t.first) {
      e.terms_.back().second += t.second;
    } else {
      if (!e.terms_.empty() && e.terms_.back().second == 0) e.terms_.pop_back();
      e.terms_.push_back(std::move(t));
    }
  }
  if (!e.terms_.empty() && e.terms_.back().second == 0) e.terms_.pop_back();
  return e;
}

std::optional<Rational> Expr::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.front().first.is_one()) return terms_.front().second;
  return std::nullopt;
}

bool Expr::has_transcendental() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first.has_transcendental(); });
}

Rational Expr::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

bool Expr::independent_of(std::size_t var) const {
  for (const auto& [m, c] : terms_) {
    if (var == 0) {
      if (!m.lead.is_zero() || m.logpow != 0) return false;
    } else if (m.rest[var - 1] != 0) {
      return false;
    }
  }
  return true;
}

Expr& Expr::operator+=(const Expr& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) return *this = other;
  terms_ = merge(terms_, other.terms_, false);
  return *this;
}

Expr& Expr::operator-=(const Expr& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, true);
  return *this;
}

Expr& Expr::operator*=(const Expr& other) { return *this = *this * other; }

Expr& Expr::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= scalar;
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (auto c = b.constant_value()) return Expr(a) *= *c;
  if (auto c = a.constant_value()) return Expr(b) *= *c;
  std::vector<Expr::Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) products.emplace_back(ma * mb, ca * cb);
  return Expr::from_terms(std::move(products));
}

Expr operator-(Expr a) {
  for (auto& t : a.terms_) t.second = -t.second;
  return a;
}

std::optional<std::size_t> VarTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

VarTable VarTable::numbered(std::string_view prefix, std::size_t count) {
  VarTable t;
  for (std::size_t i = 1; i <= count; ++i) t.names.push_back(std::string(prefix) + std::to_string(i));
  return t;
}

VarTable VarTable::with(std::string name) const {
  VarTable t = *this;
  t.names.push_back(std::move(name));
  return t;
}

Expr derive(const Expr& f, std::size_t var) {
  std::vector<Expr::Term> out;
  out.reserve(f.size() * 2);
  for (const auto& [m, c] : f.terms()) {
    if (var == 0) {
      Monomial lowered = m;
      lowered.lead = m.lead - Exponent(1);
      if (!m.lead.is_zero()) out.emplace_back(lowered, c * m.lead.to_rational());
      if (m.logpow > 0) {
        Monomial dl = lowered;
        dl.logpow = static_cast<std::uint16_t>(m.logpow - 1);
        out.emplace_back(dl, c * static_cast<long>(m.logpow));
      }
    } else {
      std::int32_t n = m.rest[var - 1];
      if (n == 0) continue;
      Monomial lowered = m;
      lowered.rest[var - 1] = n - 1;
      out.emplace_back(lowered, c * n);
    }
  }
  return Expr::from_terms(std::move(out));
}

Expr pow(const Expr& base, Exponent e) {
  if (e.is_zero()) return Expr(1);
  if (base.is_zero()) {
    if (e.num() < 0) throw DivisionByZero("zero raised to a negative power");
    return {};
  }
  if (base.is_single_term()) {
    const auto& [m, c] = base.terms().front();
    return Expr::term(power_monomial(m, e), signed_root_power(c, e));
  }
  if (!e.is_integer() || e.num() < 0)
    throw BranchError("fractional or negative power of a sum (exponent " + e.to_string() + ")");
  return pow_sum(base, e.num());
}

Expr substitute(const Expr& f, const Substitution& map) {
  const auto& images = map.images();
  std::map<std::pair<std::size_t, Exponent>, Expr> cache;
  auto power_of = [&](std::size_t var, Exponent e) -> const Expr& {
    auto key = std::make_pair(var, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, pow(images[var], e)).first->second;
  };

  std::optional<Expr> log_image;
  auto lead_log_image = [&]() -> const Expr& {
    if (log_image) return *log_image;
    const Expr& img = images[0];
    if (!img.is_single_term()) throw DomainError("log(x1) image must be a signed power of the new x1");
    const auto& [m, c] = img.terms().front();
    Monomial bare = m;
    bare.lead = Exponent(0);
    if (!bare.is_one()) throw DomainError("log(x1) image must involve only the new x1");
    if (c != 1 && c != -1) throw DomainError("log of a non-unit multiple of x1 is not representable");
    Expr value = Expr(m.lead.to_rational()) * Expr::log_lead();
    if (c < 0) value += Expr::branch_constant();
    log_image = std::move(value);
    return *log_image;
  };

  Expr result;
  for (const auto& [m, c] : f.terms()) {
    Monomial kept;
    Expr factor(c);
    if (!m.lead.is_zero()) {
      if (!images.empty())
        factor *= power_of(0, m.lead);
      else
        kept.lead = m.lead;
    }
    for (std::size_t i = 0; i < m.rest.size(); ++i) {
      if (m.rest[i] == 0) continue;
      if (i + 1 < images.size())
        factor *= power_of(i + 1, Exponent(m.rest[i]));
      else
        kept.rest[i] = m.rest[i];
    }
    if (m.logpow > 0) {
      if (!images.empty())
        factor *= pow(lead_log_image(), Exponent(m.logpow));
      else
        kept.logpow = m.logpow;
    }
    kept.branchpow = m.branchpow;
    if (!kept.is_one()) factor *= Expr::term(kept, 1);
    result += factor;
  }
  return result;
}

Rational evaluate_exact(const Expr& f, const Point& point) {
  std::map<Exponent, Rational> lead_powers;
  Rational total = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational v = c;
    if (!m.lead.is_zero()) {
      if (point.values.empty()) throw std::invalid_argument("evaluation point lacks x1");
      auto it = lead_powers.find(m.lead);
      if (it == lead_powers.end()) it = lead_powers.emplace(m.lead, power_of_value(point.values[0], m.lead)).first;
      v *= it->second;
    }
    for (std::size_t i = 0; i < m.rest.size(); ++i) {
      if (m.rest[i] == 0) continue;
      if (i + 1 >= point.values.size()) throw std::invalid_argument("evaluation point lacks a variable");
      v *= power_of_value(point.values[i + 1], Exponent(m.rest[i]));
    }
    if (m.logpow) v *= pow_int(point.logval, m.logpow);
    if (m.branchpow) v *= pow_int(point.branchval, m.branchpow);
    total += v;
  }
  return total;
}

Rational power_value(const Rational& x, Exponent e) { return power_of_value(x, e); }

std::int64_t lead_denominator_lcm(const Expr& f) {
  std::int64_t l = 1;
  for (const auto& [m, c] : f.terms()) l = std::lcm(l, m.lead.den());
  return l;
}

bool is_quadratic_polynomial(const Expr& f) {
  for (const auto& [m, c] : f.terms()) {
    if (m.has_transcendental() || !m.lead.is_integer() || m.lead.num() < 0) return false;
    std::int64_t degree = m.lead.num();
    for (std::int32_t e : m.rest) {
      if (e < 0) return false;
      degree += e;
    }
    if (degree > 2) return false;
  }
  return true;
}

QuadraticComparison equals_mod_quadratic(const Expr& f, const Expr& g) {
  QuadraticComparison out;
  out.residual = f - g;
  out.equivalent = is_quadratic_polynomial(out.residual);
  return out;
}

}  // namespace frobkit
