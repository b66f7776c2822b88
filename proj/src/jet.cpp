#include "frobkit/jet.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <utility>

namespace frobkit {

JetSpace::JetSpace(std::size_t vars, int max_order) : vars_(vars), max_order_(max_order) {
  // multi-indices sorted by degree, lexicographic within a degree
  std::map<std::vector<int>, std::size_t> slot;
  std::vector<int> cur(vars, 0);
  for (int deg = 0; deg <= max_order; ++deg) {
    std::vector<std::vector<int>> level;
    std::function<void(std::size_t, int)> fill = [&](std::size_t v, int left) {
      if (v + 1 == vars) {
        cur[v] = left;
        level.push_back(cur);
        return;
      }
      for (int e = left; e >= 0; --e) {
        cur[v] = e;
        fill(v + 1, left - e);
      }
    };
    if (vars == 0) {
      if (deg == 0) level.push_back({});
    } else {
      fill(0, deg);
    }
    for (auto& m : level) {
      slot.emplace(m, index_.size());
      index_.push_back(std::move(m));
      degree_.push_back(deg);
    }
    count_.push_back(index_.size());
  }
  raise_.assign(index_.size(), std::vector<std::size_t>(vars, npos));
  for (std::size_t k = 0; k < index_.size(); ++k)
    for (std::size_t v = 0; v < vars; ++v) {
      if (degree_[k] == max_order) continue;
      std::vector<int> m = index_[k];
      ++m[v];
      raise_[k][v] = slot.at(m);
    }
  add_.resize(index_.size());
  for (std::size_t a = 0; a < index_.size(); ++a) {
    add_[a].assign(count(max_order - degree_[a]), npos);
    for (std::size_t b = 0; b < add_[a].size(); ++b) {
      std::vector<int> m = index_[a];
      for (std::size_t v = 0; v < vars; ++v) m[v] += index_[b][v];
      add_[a][b] = slot.at(m);
    }
  }
}

std::shared_ptr<const JetSpace> JetSpace::get(std::size_t vars, int max_order) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, int>, std::shared_ptr<const JetSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& s = cache[{vars, max_order}];
  if (!s) s = std::make_shared<const JetSpace>(vars, max_order);
  return s;
}

Jet::Jet(std::shared_ptr<const JetSpace> space, int order)
    : space_(std::move(space)), order_(order), c_(space_->size()) {}

Jet Jet::constant(std::shared_ptr<const JetSpace> space, const Rational& value) {
  Jet j(space, space->max_order());
  j.c_[0] = value;
  return j;
}

Jet Jet::coordinate(std::shared_ptr<const JetSpace> space, std::size_t var, const Rational& value) {
  Jet j = constant(space, value);
  if (j.order_ > 0) j.c_[j.space_->raise(0, var)] = 1;
  return j;
}

const Rational& Jet::value() const {
  if (order_ < 0) throw std::logic_error("jet order exhausted");
  return c_[0];
}

Jet Jet::derivative(std::size_t var) const {
  Jet out(space_, order_ - 1);
  for (std::size_t k = 0; k < space_->count(order_ - 1); ++k) {
    const Rational& c = c_[space_->raise(k, var)];
    if (c != 0) out.c_[k] = c * (space_->multi_index(k)[var] + 1);
  }
  return out;
}

bool Jet::is_zero() const {
  for (std::size_t k = 0; k < space_->count(order_); ++k)
    if (c_[k] != 0) return false;
  return true;
}

Jet& Jet::operator+=(const Jet& other) {
  order_ = std::min(order_, other.order_);
  for (std::size_t k = 0; k < space_->count(order_); ++k) c_[k] += other.c_[k];
  for (std::size_t k = space_->count(order_); k < c_.size(); ++k) c_[k] = 0;
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  order_ = std::min(order_, other.order_);
  for (std::size_t k = 0; k < space_->count(order_); ++k) c_[k] -= other.c_[k];
  for (std::size_t k = space_->count(order_); k < c_.size(); ++k) c_[k] = 0;
  return *this;
}

Jet& Jet::operator*=(const Rational& s) {
  for (std::size_t k = 0; k < space_->count(order_); ++k) c_[k] *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const JetSpace& sp = *a.space_;
  Jet out(a.space_, std::min(a.order_, b.order_));
  for (std::size_t i = 0; i < sp.count(out.order_); ++i) {
    if (a.c_[i] == 0) continue;
    const std::size_t nb = sp.count(out.order_ - sp.degree(i));
    for (std::size_t j = 0; j < nb; ++j)
      if (b.c_[j] != 0) out.c_[sp.add(i, j)] += a.c_[i] * b.c_[j];
  }
  return out;
}

namespace {

// Σ_k coef(k) u^k for u with zero constant term.
template <class Coef>
Jet series(const Jet& u, Coef coef) {
  Jet out = Jet::constant(u.space(), coef(0));
  Jet term = Jet::constant(u.space(), Rational(1));
  for (int k = 1; k <= u.order(); ++k) {
    term = term * u;
    out += term * coef(k);
  }
  if (out.order() > u.order()) out += Jet(u.space(), u.order());
  return out;
}

}  // namespace

Jet Jet::inverse() const {
  const Rational a0 = value();
  if (a0 == 0) throw DivisionByZero("jet with vanishing value inverted");
  Jet u = *this;
  u.c_[0] = 0;
  u *= Rational(1) / a0;
  return series(u, [](int k) { return Rational(k % 2 ? -1 : 1); }) * (Rational(1) / a0);
}

Jet Jet::pow(const Rational& a) const {
  const Rational a0 = value();
  if (a0 == 0) throw DivisionByZero("jet with vanishing value raised to a power");
  Jet u = *this;
  u.c_[0] = 0;
  u *= Rational(1) / a0;
  std::vector<Rational> binom{1};
  for (int k = 1; k <= order_; ++k) binom.push_back(binom.back() * (a - (k - 1)) / k);
  return series(u, [&](int k) { return binom[k]; }) * power_value(a0, Exponent(a));
}

TaylorModel::TaylorModel(const RatExpr& f, std::size_t vars, int order)
    : space_(JetSpace::get(vars, order)), order_(order) {
  auto build = [&](const Expr& g, int power) {
    Part part{std::vector<Expr>(space_->size()), power};
    part.derivatives[0] = g;
    for (std::size_t k = 1; k < space_->size(); ++k) {
      const auto& m = space_->multi_index(k);
      const std::size_t v = static_cast<std::size_t>(std::find_if(m.begin(), m.end(), [](int e) { return e > 0; }) - m.begin());
      std::vector<int> parent = m;
      --parent[v];
      std::size_t p = 0;
      while (space_->multi_index(p) != parent) ++p;
      part.derivatives[k] = derive(part.derivatives[p], v);
    }
    parts_.push_back(std::move(part));
  };
  build(f.numerator(), 1);
  for (const auto& [g, e] : f.factors()) build(g, -e);
}

Jet TaylorModel::at(const Point& p) const {
  Jet out;
  for (const auto& part : parts_) {
    Jet j(space_, order_);
    for (std::size_t k = 0; k < space_->size(); ++k) {
      if (part.derivatives[k].is_zero()) continue;
      Rational factorial = 1;
      for (int e : space_->multi_index(k))
        for (int i = 2; i <= e; ++i) factorial *= i;
      j.coefficient(k) = evaluate_exact(part.derivatives[k], p) / factorial;
    }
    if (part.power < 0) {
      Jet inv = j.inverse();
      j = inv;
      for (int i = 1; i < -part.power; ++i) j = j * inv;
    }
    out = out.space() ? out * j : j;
  }
  return out;
}

JetMatrix jet_inverse(const JetMatrix& m) {
  const std::size_t n = m.size();
  JetMatrix a = m;
  const auto& space = m[0][0].space();
  JetMatrix inv(n, JetVector(n, Jet::constant(space, Rational(0))));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Jet::constant(space, Rational(1));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].value() == 0) ++piv;
    if (piv == n) throw SingularMatrixError("metric is singular at the sample point");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Jet p = a[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] * p;
      inv[col][j] = inv[col][j] * p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Jet f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

Jet jet_determinant(const JetMatrix& m) {
  const std::size_t n = m.size();
  JetMatrix a = m;
  Jet det = Jet::constant(m[0][0].space(), Rational(1));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].value() == 0) ++piv;
    if (piv == n) throw SingularMatrixError("matrix is singular at the sample point");
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det *= Rational(-1);
    }
    det = det * a[col][col];
    Jet p = a[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      Jet f = a[r][col] * p;
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

namespace {

JetTensor3 tensor3(std::size_t n, const std::shared_ptr<const JetSpace>& space) {
  return JetTensor3(n, std::vector<JetVector>(n, JetVector(n, Jet::constant(space, Rational(0)))));
}

}  // namespace

JetTensor3 jet_connection(const JetMatrix& omega) {
  const std::size_t n = omega.size();
  const auto& space = omega[0][0].space();
  JetMatrix g = jet_inverse(omega);
  JetTensor3 first = tensor3(n, space);  // Γ_{dbc}
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        first[d][b][c] = (g[d][c].derivative(b) + g[d][b].derivative(c) - g[b][c].derivative(d)) * Rational(1, 2);
  JetTensor3 out = tensor3(n, space);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) out[a][b][c] += omega[a][d] * first[d][b][c];
  return out;
}

JetTensor3 jet_contravariant_christoffels(const JetMatrix& omega) {
  const std::size_t n = omega.size();
  JetTensor3 gamma = jet_connection(omega);
  JetTensor3 out = tensor3(n, omega[0][0].space());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) out[i][j][k] -= omega[i][m] * gamma[j][m][k];
  return out;
}

std::vector<Jet> jet_riemann(const JetMatrix& omega) {
  const std::size_t n = omega.size();
  JetTensor3 g = jet_connection(omega);
  std::vector<Jet> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          Jet r = g[a][d][b].derivative(c) - g[a][c][b].derivative(d);
          for (std::size_t e = 0; e < n; ++e) r += g[a][c][e] * g[e][d][b] - g[a][d][e] * g[e][c][b];
          out.push_back(std::move(r));
        }
  return out;
}

JetMatrix jet_lie_metric(const JetMatrix& omega, const JetVector& x) {
  const std::size_t n = omega.size();
  JetMatrix out(n, JetVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Jet v = jet_apply(x, omega[i][j]);
      for (std::size_t k = 0; k < n; ++k)
        v -= omega[k][j] * x[i].derivative(k) + omega[i][k] * x[j].derivative(k);
      out[i][j] = std::move(v);
    }
  return out;
}

Jet jet_apply(const JetVector& x, const Jet& f) {
  Jet v = x[0] * f.derivative(0);
  for (std::size_t k = 1; k < x.size(); ++k) v += x[k] * f.derivative(k);
  return v;
}

JetVector jet_bracket(const JetVector& x, const JetVector& y) {
  JetVector out;
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(jet_apply(x, y[i]) - jet_apply(y, x[i]));
  return out;
}

JetTensor3 jet_lie_christoffel(const JetMatrix& omega, const JetTensor3& gamma, const JetVector& x) {
  const std::size_t n = omega.size();
  JetTensor3 out = tensor3(n, omega[0][0].space());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Jet v = jet_apply(x, gamma[i][j][k]);
        for (std::size_t s = 0; s < n; ++s) {
          v -= gamma[s][j][k] * x[i].derivative(s) + gamma[i][s][k] * x[j].derivative(s);
          v += gamma[i][j][s] * x[s].derivative(k);
          v -= omega[i][s] * x[j].derivative(k).derivative(s);
        }
        out[i][j][k] = std::move(v);
      }
  return out;
}

}  // namespace frobkit
