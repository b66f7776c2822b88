#include "frobkit/geometry.hpp"

#include <bit>
#include <cstdint>

namespace frobkit {

namespace {

// det of m restricted to `rows` x `cols` (equal sizes) by Laplace DP over column subsets.
RatExpr subdeterminant(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  const std::size_t n = rows.size();
  if (n == 0) return RatExpr(1);
  std::vector<RatExpr> dp(std::size_t{1} << n);
  std::vector<bool> live(dp.size(), false);
  dp[0] = RatExpr(1);
  live[0] = true;
  for (std::uint32_t mask = 0; mask < dp.size(); ++mask) {
    if (!live[mask] || dp[mask].is_zero()) continue;
    const std::size_t row = rows[static_cast<std::size_t>(std::popcount(mask))];
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (1u << j)) continue;
      const RatExpr& entry = m[row][cols[j]];
      if (entry.is_zero()) continue;
      // inversions added by placing column j after the columns already used
      int above = std::popcount(mask >> (j + 1));
      RatExpr term = dp[mask] * entry;
      std::uint32_t next = mask | (1u << j);
      if (above % 2) term = -term;
      if (live[next])
        dp[next] += term;
      else
        dp[next] = std::move(term);
      live[next] = true;
    }
  }
  return dp.back();
}

std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (i != skip) out.push_back(i);
  return out;
}

std::string index_text(std::initializer_list<std::size_t> idx) {
  std::string out;
  for (std::size_t i : idx) {
    if (!out.empty()) out += ",";
    out += std::to_string(i + 1);
  }
  return out;
}

}  // namespace

Matrix zero_matrix(std::size_t rank) { return Matrix(rank, std::vector<RatExpr>(rank)); }

Matrix to_matrix(const std::vector<std::vector<Expr>>& entries) {
  Matrix out;
  for (const auto& row : entries) out.emplace_back(row.begin(), row.end());
  return out;
}

bool is_zero(const Matrix& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] -= b[i][j];
  return out;
}

Matrix operator*(const RatExpr& s, const Matrix& m) {
  Matrix out = m;
  for (auto& row : out)
    for (auto& x : row) x = s * x;
  return out;
}

std::optional<std::array<std::size_t, 2>> first_difference(const Matrix& a, const Matrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!(a[i][j] == b[i][j])) return std::array<std::size_t, 2>{i, j};
  return std::nullopt;
}

RatExpr determinant(const Matrix& m) {
  std::vector<std::size_t> idx = all_but(m.size(), m.size());
  return subdeterminant(m, idx, idx);
}

Matrix adjugate(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix adj = zero_matrix(n);
  if (n == 1) {
    adj[0][0] = RatExpr(1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatExpr minor = subdeterminant(m, all_but(n, i), all_but(n, j));
      adj[j][i] = (i + j) % 2 ? -minor : minor;
    }
  return adj;
}

bool Tensor3::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

std::optional<std::array<std::size_t, 3>> Tensor3::first_difference(const Tensor3& other) const {
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t k = 0; k < rank_; ++k)
        if (!((*this)(i, j, k) == other(i, j, k))) return std::array<std::size_t, 3>{i, j, k};
  return std::nullopt;
}

Tensor3 operator+(const Tensor3& a, const Tensor3& b) {
  Tensor3 out = a;
  for (std::size_t n = 0; n < out.data_.size(); ++n) out.data_[n] += b.data_[n];
  return out;
}

Tensor3 operator*(const RatExpr& s, const Tensor3& t) {
  Tensor3 out = t;
  for (auto& x : out.data_) x = s * x;
  return out;
}

ContraMetric::ContraMetric(Matrix entries) : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n == 0) throw SpecError("metric of rank 0");
  for (const auto& row : entries_)
    if (row.size() != n) throw SpecError("metric matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(entries_[i][j] == entries_[j][i]))
        throw SpecError("metric is not symmetric at (" + index_text({i, j}) + ")");
}

Matrix covariant_inverse(const ContraMetric& omega) {
  RatExpr det = determinant(omega.entries());
  if (det.is_zero()) throw SingularMatrixError("metric has zero determinant");
  Matrix g = adjugate(omega.entries());
  for (auto& row : g)
    for (auto& x : row) x /= det;
  return g;
}

Tensor3 connection(const ContraMetric& omega) {
  const std::size_t n = omega.rank();
  Matrix g = covariant_inverse(omega);
  // dg[k][i][j] = ∂_k g_{ij}
  std::vector<Matrix> dg(n, zero_matrix(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        dg[k][i][j] = derive(g[i][j], k);
        dg[k][j][i] = dg[k][i][j];
      }
  // first kind Γ_{l,bc} = ½(∂_b g_{lc} + ∂_c g_{lb} - ∂_l g_{bc})
  Tensor3 first(n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = b; c < n; ++c) {
        RatExpr v = dg[b][l][c] + dg[c][l][b] - dg[l][b][c];
        first(l, b, c) = v * RatExpr(Rational(1, 2));
        first(l, c, b) = first(l, b, c);
      }
  // raise with Ω itself: Γ^a_{bc} = Ω^{al} Γ_{l,bc}
  Tensor3 second(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = b; c < n; ++c) {
        RatExpr v;
        for (std::size_t l = 0; l < n; ++l)
          if (!omega(a, l).is_zero()) v += omega(a, l) * first(l, b, c);
        second(a, b, c) = v;
        second(a, c, b) = v;
      }
  return second;
}

Christoffel christoffels(const ContraMetric& omega) {
  const std::size_t n = omega.rank();
  Tensor3 second = connection(omega);
  Christoffel out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        RatExpr v;
        for (std::size_t m = 0; m < n; ++m)
          if (!omega(i, m).is_zero()) v -= omega(i, m) * second(j, m, k);
        out(i, j, k) = v;
      }
  return out;
}

FlatnessReport flatness(const ContraMetric& omega) {
  const std::size_t n = omega.rank();
  Tensor3 G = connection(omega);
  FlatnessReport report;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          RatExpr r = derive(G(a, d, b), c) - derive(G(a, c, b), d);
          for (std::size_t e = 0; e < n; ++e) {
            if (!G(a, c, e).is_zero() && !G(e, d, b).is_zero()) r += G(a, c, e) * G(e, d, b);
            if (!G(a, d, e).is_zero() && !G(e, c, b).is_zero()) r -= G(a, d, e) * G(e, c, b);
          }
          if (!r.is_zero()) {
            report.flat = false;
            report.index = {a, b, c, d};
            report.component = r;
            return report;
          }
        }
  return report;
}

bool is_flat(const ContraMetric& omega) { return flatness(omega).flat; }

RatExpr apply(const VectorField& x, const RatExpr& f) {
  RatExpr out;
  for (std::size_t s = 0; s < x.size(); ++s)
    if (!x[s].is_zero()) out += x[s] * derive(f, s);
  return out;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  VectorField out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = apply(x, y[i]) - apply(y, x[i]);
  return out;
}

Matrix lie_metric(const Matrix& omega, const VectorField& x) {
  const std::size_t n = omega.size();
  // dx[s][i] = ∂_s X^i
  std::vector<std::vector<RatExpr>> dx(n, std::vector<RatExpr>(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < n; ++i) dx[s][i] = derive(x[i], s);
  Matrix out = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatExpr v = apply(x, omega[i][j]);
      for (std::size_t s = 0; s < n; ++s) {
        if (!dx[s][i].is_zero()) v -= omega[s][j] * dx[s][i];
        if (!dx[s][j].is_zero()) v -= omega[i][s] * dx[s][j];
      }
      out[i][j] = v;
    }
  return out;
}

PbhtPair lie_pbht(const Matrix& omega, const Christoffel& gamma, const VectorField& x) {
  const std::size_t n = omega.size();
  std::vector<std::vector<RatExpr>> dx(n, std::vector<RatExpr>(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < n; ++i) dx[s][i] = derive(x[i], s);
  PbhtPair out{lie_metric(omega, x), Tensor3(n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        RatExpr v = apply(x, gamma(i, j, k));
        for (std::size_t s = 0; s < n; ++s) {
          if (!dx[s][i].is_zero()) v -= gamma(s, j, k) * dx[s][i];
          if (!dx[s][j].is_zero()) v -= gamma(i, s, k) * dx[s][j];
          if (!dx[k][s].is_zero()) v += gamma(i, j, s) * dx[k][s];
          if (!omega[i][s].is_zero()) v -= omega[i][s] * derive(dx[k][j], s);
        }
        out.christoffel(i, j, k) = v;
      }
  return out;
}

PencilReport pencil_check(const ContraMetric& omega2, const ContraMetric& omega1) {
  const std::size_t n = omega2.rank();
  if (omega1.rank() != n) throw SpecError("pencil metrics have different ranks");
  if (n >= kMaxVariables) throw SpecError("rank too large for a pencil variable");
  RatExpr lambda(Expr::variable(n));
  ContraMetric pencil(omega2.entries() + lambda * omega1.entries());
  PencilReport report;
  FlatnessReport fr = flatness(pencil);
  report.flat = fr.flat;
  if (!fr.flat) {
    const auto& [a, b, c, d] = fr.index;
    report.failure = "R^" + index_text({a}) + "_" + index_text({b, c, d}) + " of the pencil is nonzero";
    report.witness = fr.component;
  }
  Christoffel sum = christoffels(omega2) + lambda * christoffels(omega1);
  Christoffel joint = christoffels(pencil);
  auto diff = joint.first_difference(sum);
  report.additive = !diff;
  if (diff && report.failure.empty()) {
    const auto& [i, j, k] = *diff;
    report.failure = "Gamma^{" + index_text({i, j}) + "}_" + index_text({k}) + " of the pencil is not additive";
    report.witness = joint(i, j, k) - sum(i, j, k);
  }
  return report;
}

VectorField gradient(const RatExpr& tau, const Matrix& omega) {
  const std::size_t n = omega.size();
  VectorField out(n);
  for (std::size_t j = 0; j < n; ++j) {
    RatExpr dj = derive(tau, j);
    if (dj.is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i)
      if (!omega[i][j].is_zero()) out[i] += omega[i][j] * dj;
  }
  return out;
}

CoordinateMap::CoordinateMap(std::vector<Expr> forward, std::vector<Expr> inverse)
    : forward_(std::move(forward)), inverse_(std::move(inverse)) {
  const std::size_t n = forward_.size();
  if (inverse_.size() != n) throw SpecError("coordinate map and inverse have different sizes");
  Substitution to_s(inverse_);
  Substitution to_t(forward_);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(substitute(forward_[i], to_s) == Expr::variable(i)))
      throw SpecError("forward map composed with inverse is not the identity in component " + index_text({i}));
    if (!(substitute(inverse_[i], to_t) == Expr::variable(i)))
      throw SpecError("inverse map composed with forward is not the identity in component " + index_text({i}));
  }
  jacobian_.assign(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) jacobian_[i][j] = derive(forward_[i], j);
}

Matrix pushforward(const Matrix& omega, const CoordinateMap& map) {
  const std::size_t n = omega.size();
  const auto& J = map.jacobian();
  // (JΩ)^{i b}
  Matrix jo = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t a = 0; a < n; ++a)
        if (!J[i][a].is_zero() && !omega[a][b].is_zero()) jo[i][b] += RatExpr(J[i][a]) * omega[a][b];
  Substitution to_s(map.inverse());
  Matrix out = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      RatExpr v;
      for (std::size_t b = 0; b < n; ++b)
        if (!J[j][b].is_zero() && !jo[i][b].is_zero()) v += jo[i][b] * RatExpr(J[j][b]);
      out[i][j] = substitute(v, to_s);
      out[j][i] = out[i][j];
    }
  return out;
}

VectorField pushforward(const VectorField& x, const CoordinateMap& map) {
  const std::size_t n = x.size();
  const auto& J = map.jacobian();
  Substitution to_s(map.inverse());
  VectorField out(n);
  for (std::size_t i = 0; i < n; ++i) {
    RatExpr v;
    for (std::size_t a = 0; a < n; ++a)
      if (!J[i][a].is_zero() && !x[a].is_zero()) v += RatExpr(J[i][a]) * x[a];
    out[i] = substitute(v, to_s);
  }
  return out;
}

RatExpr pushforward(const RatExpr& f, const CoordinateMap& map) { return substitute(f, Substitution(map.inverse())); }

}  // namespace frobkit
