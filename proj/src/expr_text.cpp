#include <algorithm>
#include <cctype>

#include "frobkit/expr.hpp"

namespace frobkit {

namespace {

std::string exponent_suffix(Exponent e) {
  if (e == Exponent(1)) return "";
  if (e.is_integer() && e.num() > 0) return "^" + std::to_string(e.num());
  return "^(" + e.to_string() + ")";
}

// Descending total degree, then descending exponent vector, then log powers.
bool print_before(const Monomial& a, const Monomial& b) {
  Rational da = a.total_degree();
  Rational db = b.total_degree();
  if (da != db) return da > db;
  if (a.lead != b.lead) return b.lead.less_numeric(a.lead);
  if (a.rest != b.rest) return a.rest > b.rest;
  if (a.logpow != b.logpow) return a.logpow > b.logpow;
  return a.branchpow > b.branchpow;
}

std::string monomial_body(const Monomial& m, const VarTable& vars) {
  std::vector<std::string> factors;
  auto name = [&](std::size_t i) -> std::string {
    if (i < vars.size()) return vars.names[i];
    return "x" + std::to_string(i + 1);
  };
  if (!m.lead.is_zero()) factors.push_back(name(0) + exponent_suffix(m.lead));
  for (std::size_t i = 0; i < m.rest.size(); ++i)
    if (m.rest[i] != 0) factors.push_back(name(i + 1) + exponent_suffix(Exponent(m.rest[i])));
  if (m.logpow) factors.push_back("log(" + name(0) + ")" + exponent_suffix(Exponent(m.logpow)));
  if (m.branchpow) factors.push_back("log(-1)" + exponent_suffix(Exponent(m.branchpow)));
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += '*';
    out += factors[i];
  }
  return out;
}

std::string term_magnitude(const Monomial& m, const Rational& magnitude, const VarTable& vars) {
  if (m.is_one()) return magnitude.get_str();
  std::string body = monomial_body(m, vars);
  if (magnitude == 1) return body;
  return magnitude.get_str() + "*" + body;
}

class Parser {
 public:
  Parser(std::string_view text, const VarTable& vars) : text_(text), vars_(vars) {}

  Expr parse() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_ + 1); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  Integer integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Rational rational() {
    Integer num = integer();
    if (accept('/')) {
      Integer den = integer();
      if (den == 0) fail("zero denominator");
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    return Rational(num);
  }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr expression() {
    Expr sum = signed_term();
    for (;;) {
      if (accept('+'))
        sum += signed_term();
      else if (accept('-'))
        sum -= signed_term();
      else
        return sum;
    }
  }

  Expr signed_term() {
    if (accept('-')) return -signed_term();
    if (accept('+')) return signed_term();
    return term();
  }

  Expr term() {
    Expr product = factor();
    while (accept('*')) product *= factor();
    return product;
  }

  Expr factor() {
    skip_space();
    std::size_t start = pos_;
    Expr b = base();
    if (!accept('^')) return b;
    Exponent e = exponent();
    try {
      return pow(b, e);
    } catch (const DomainError& err) {
      fail_at(err.what(), start);
    }
  }

  Exponent exponent() {
    skip_space();
    Rational q;
    if (accept('(')) {
      bool negative = accept('-');
      q = rational();
      if (negative) q = -q;
      expect(')');
    } else {
      bool negative = accept('-');
      q = Rational(integer());
      if (negative) q = -q;
    }
    try {
      return Exponent(q);
    } catch (const std::overflow_error&) {
      fail("exponent too large");
    }
  }

  Expr base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      Expr inner = expression();
      expect(')');
      return inner;
    }
    if (peek_digit()) return Expr(rational());
    std::size_t start = pos_;
    std::string name = identifier();
    if (name.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (name == "log" && accept('(')) return log_argument();
    auto index = vars_.index_of(name);
    if (!index) fail_at("unknown identifier '" + name + "'", start);
    return Expr::variable(*index);
  }

  Expr log_argument() {
    skip_space();
    std::size_t start = pos_;
    if (accept('-')) {
      Integer one = integer();
      if (one != 1) fail_at("log of a negative constant other than -1", start);
      expect(')');
      return Expr::branch_constant();
    }
    std::string name = identifier();
    auto index = vars_.index_of(name);
    if (name.empty() || !index) fail_at("log argument must be a declared variable", start);
    if (*index != 0) fail_at("log is only supported on the distinguished variable '" + vars_.names[0] + "'", start);
    expect(')');
    return Expr::log_lead();
  }

  std::string_view text_;
  const VarTable& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Expr& f, const VarTable& vars) {
  if (f.is_zero()) return "0";
  std::vector<const Expr::Term*> order;
  order.reserve(f.size());
  for (const auto& t : f.terms()) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const Expr::Term* a, const Expr::Term* b) { return print_before(a->first, b->first); });
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& [m, c] = *order[i];
    bool negative = c < 0;
    Rational magnitude = negative ? Rational(-c) : c;
    if (i == 0)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += term_magnitude(m, magnitude, vars);
  }
  return out;
}

Expr parse_expr(std::string_view text, const VarTable& vars) { return Parser(text, vars).parse(); }

}  // namespace frobkit
