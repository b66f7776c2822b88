#include "frobkit/ratexpr.hpp"

#include <algorithm>
#include <numeric>

namespace frobkit {

namespace {

struct Content {
  Expr unit;       // invertible single term c * mu
  Expr primitive;  // d / unit
};

// Leading term under a multiplication-compatible order (numeric x1 exponent,
// then the integer exponents), so that normalisation commutes with monomial shifts.
const Expr::Term& leading_term(const Expr& d) {
  auto before = [](const Monomial& a, const Monomial& b) {
    if (a.lead != b.lead) return a.lead.less_numeric(b.lead);
    if (a.rest != b.rest) return a.rest < b.rest;
    if (a.logpow != b.logpow) return a.logpow < b.logpow;
    return a.branchpow < b.branchpow;
  };
  const Expr::Term* best = &d.terms().front();
  for (const auto& t : d.terms())
    if (before(best->first, t.first)) best = &t;
  return *best;
}

Content split_content(const Expr& d) {
  const auto& terms = d.terms();
  Monomial mu = terms.front().first;
  mu.logpow = 0;
  mu.branchpow = 0;
  for (const auto& [m, c] : terms) {
    if (m.lead.less_numeric(mu.lead)) mu.lead = m.lead;
    for (std::size_t i = 0; i < mu.rest.size(); ++i) mu.rest[i] = std::min(mu.rest[i], m.rest[i]);
  }
  Monomial inverse;
  inverse.lead = -mu.lead;
  for (std::size_t i = 0; i < mu.rest.size(); ++i) inverse.rest[i] = -mu.rest[i];
  Expr shifted = d * Expr::term(inverse, 1);
  Rational lc = leading_term(shifted).second;
  Content out;
  out.unit = Expr::term(mu, lc);
  out.primitive = shifted * Rational(1 / lc);
  return out;
}

Expr power(const Expr& f, int e) { return pow(f, Exponent(e)); }

}  // namespace

RatExpr::RatExpr(Expr numerator) : num_(std::move(numerator)) {}

RatExpr RatExpr::quotient(const Expr& numerator, const Expr& denominator) {
  RatExpr r(numerator);
  r.divide_by(denominator, 1);
  return r;
}

void RatExpr::divide_by(const Expr& d, int pw) {
  if (d.is_zero()) throw DivisionByZero("division by a zero expression");
  if (num_.is_zero()) return;
  Content c = split_content(d);
  num_ *= pow(c.unit, Exponent(-pw));
  if (c.primitive == Expr(1)) return;
  auto it = std::find_if(factors_.begin(), factors_.end(), [&](const Factor& f) { return f.first == c.primitive; });
  if (it != factors_.end())
    it->second += pw;
  else
    factors_.emplace_back(std::move(c.primitive), pw);
  cancel_trivial();
}

void RatExpr::cancel_trivial() {
  bool changed = true;
  while (changed && !factors_.empty()) {
    changed = false;
    if (num_.size() == 0) {
      factors_.clear();
      return;
    }
    for (auto it = factors_.begin(); it != factors_.end(); ++it) {
      const Expr& f = it->first;
      if (f.size() != num_.size() || f.terms().front().first != num_.terms().front().first) continue;
      Rational ratio = num_.terms().front().second / f.terms().front().second;
      if (f * ratio != num_) continue;
      num_ = Expr(ratio);
      if (--it->second == 0) factors_.erase(it);
      changed = true;
      break;
    }
  }
}

Expr RatExpr::denominator() const {
  Expr d(1);
  for (const auto& [f, e] : factors_) d *= power(f, e);
  return d;
}

std::optional<Expr> RatExpr::as_expr() const {
  if (factors_.empty()) return num_;
  return std::nullopt;
}

std::optional<Rational> RatExpr::constant_value() const {
  if (!factors_.empty()) return std::nullopt;
  return num_.constant_value();
}

RatExpr& RatExpr::operator+=(const RatExpr& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (factors_.empty() && other.factors_.empty()) {
    num_ += other.num_;
    return *this;
  }
  std::vector<Factor> lcm = factors_;
  for (const auto& [f, e] : other.factors_) {
    auto it = std::find_if(lcm.begin(), lcm.end(), [&](const Factor& g) { return g.first == f; });
    if (it == lcm.end())
      lcm.emplace_back(f, e);
    else
      it->second = std::max(it->second, e);
  }
  auto scale = [&](const Expr& num, const std::vector<Factor>& have) {
    Expr scaled = num;
    for (const auto& [f, e] : lcm) {
      auto it = std::find_if(have.begin(), have.end(), [&](const Factor& g) { return g.first == f; });
      int missing = e - (it == have.end() ? 0 : it->second);
      if (missing > 0) scaled *= power(f, missing);
    }
    return scaled;
  };
  num_ = scale(num_, factors_) + scale(other.num_, other.factors_);
  factors_ = num_.is_zero() ? std::vector<Factor>{} : std::move(lcm);
  cancel_trivial();
  return *this;
}

RatExpr& RatExpr::operator-=(const RatExpr& other) { return *this += -other; }

RatExpr& RatExpr::operator*=(const RatExpr& other) {
  if (is_zero()) return *this;
  if (other.is_zero()) return *this = RatExpr();
  num_ *= other.num_;
  for (const auto& [f, e] : other.factors_) {
    auto it = std::find_if(factors_.begin(), factors_.end(), [&](const Factor& g) { return g.first == f; });
    if (it == factors_.end())
      factors_.emplace_back(f, e);
    else
      it->second += e;
  }
  cancel_trivial();
  return *this;
}

RatExpr& RatExpr::operator/=(const RatExpr& other) {
  if (other.is_zero()) throw DivisionByZero("division by a zero expression");
  if (is_zero()) return *this;
  // a/b divided by c/d = a*d / (b*c)
  for (const auto& [f, e] : other.factors_) {
    auto it = std::find_if(factors_.begin(), factors_.end(), [&](const Factor& g) { return g.first == f; });
    if (it != factors_.end()) {
      int cancel = std::min(it->second, e);
      it->second -= cancel;
      if (it->second == 0) factors_.erase(it);
      if (e > cancel) num_ *= power(f, e - cancel);
    } else {
      num_ *= power(f, e);
    }
  }
  divide_by(other.num_, 1);
  return *this;
}

RatExpr operator-(RatExpr a) {
  a.num_ = -a.num_;
  return a;
}

bool operator==(const RatExpr& a, const RatExpr& b) {
  if (a.factors_ == b.factors_) return a.num_ == b.num_;
  return (a - b).is_zero();
}

RatExpr derive(const RatExpr& f, std::size_t var) {
  if (f.is_expr()) return RatExpr(derive(f.numerator(), var));
  // d(N / prod f_k^e_k) = (N' P - N sum e_k f_k' P/f_k) / (prod f_k^e_k * P),
  // P the product of the factors that actually depend on var.
  std::vector<std::pair<const Expr*, Expr>> moving;
  for (const auto& [g, e] : f.factors()) {
    Expr dg = derive(g, var);
    if (!dg.is_zero()) moving.emplace_back(&g, std::move(dg));
  }
  if (moving.empty()) {
    RatExpr out(derive(f.numerator(), var));
    for (const auto& [g, e] : f.factors()) out.divide_by(g, e);
    return out;
  }
  Expr p(1);
  for (const auto& [g, dg] : moving) p *= *g;
  Expr numerator = derive(f.numerator(), var) * p;
  for (std::size_t k = 0; k < moving.size(); ++k) {
    int e = 0;
    for (const auto& [g, pw] : f.factors())
      if (&g == moving[k].first) e = pw;
    Expr others(1);
    for (std::size_t l = 0; l < moving.size(); ++l)
      if (l != k) others *= *moving[l].first;
    numerator -= f.numerator() * moving[k].second * others * Rational(e);
  }
  RatExpr out(numerator);
  for (const auto& [g, e] : f.factors()) {
    bool moves = std::any_of(moving.begin(), moving.end(), [&](const auto& m) { return m.first == &g; });
    out.divide_by(g, moves ? e + 1 : e);
  }
  return out;
}

RatExpr substitute(const RatExpr& f, const Substitution& map) {
  RatExpr out(substitute(f.numerator(), map));
  for (const auto& [g, e] : f.factors()) out.divide_by(substitute(g, map), e);
  return out;
}

Rational evaluate_exact(const RatExpr& f, const Point& point) {
  Rational den = 1;
  for (const auto& [g, e] : f.factors()) den *= pow_int(evaluate_exact(g, point), e);
  if (den == 0) throw DivisionByZero("denominator vanishes at the evaluation point");
  return evaluate_exact(f.numerator(), point) / den;
}

std::int64_t lead_denominator_lcm(const RatExpr& f) {
  std::int64_t l = lead_denominator_lcm(f.numerator());
  for (const auto& [g, e] : f.factors()) l = std::lcm(l, lead_denominator_lcm(g));
  return l;
}

std::string to_string(const RatExpr& f, const VarTable& vars) {
  if (f.is_expr()) return to_string(f.numerator(), vars);
  std::string den;
  for (std::size_t i = 0; i < f.factors().size(); ++i) {
    const auto& [g, e] = f.factors()[i];
    if (i) den += "*";
    den += "(" + to_string(g, vars) + ")";
    if (e != 1) den += "^" + std::to_string(e);
  }
  return "(" + to_string(f.numerator(), vars) + ")/(" + den + ")";
}

}  // namespace frobkit
