#pragma once

// Reference computations kept deliberately separate from the library: plain
// fraction arithmetic over long long numerators/denominators where sizes are
// small, and brute-force rank tests instead of canonical forms.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Q = mpq_class;
using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;

/// Rank by forward elimination with partial search for a nonzero pivot.
inline std::size_t rank(QMat m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Q f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline bool in_span(const QVec& v, QMat rows) {
  if (rows.empty()) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }
  std::size_t before = rank(rows);
  rows.push_back(v);
  return rank(rows) == before;
}

/// Same row space, decided by ranks of the stacked systems.
inline bool same_span(const QMat& a, const QMat& b) {
  QMat ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  std::size_t ra = rank(a), rb = rank(b), rab = rank(ab);
  return ra == rb && rb == rab;
}

inline QMat matmul(const QMat& a, const QMat& b) {
  QMat out(a.size(), QVec(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Q trace(const QMat& a) {
  Q t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

/// Killing form of sl_n on matrices: K(X, Y) = 2n tr(XY).
inline Q sl_killing(const QMat& x, const QMat& y) { return Q(2 * static_cast<long>(x.size())) * trace(matmul(x, y)); }

inline QMat elementary(std::size_t n, std::size_t i, std::size_t j) {
  QMat m(n, QVec(n, 0));
  m[i][j] = 1;
  return m;
}

inline QMat random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  QMat m(rows, QVec(cols));
  for (auto& r : m)
    for (auto& x : r) x = dist(rng);
  return m;
}

/// Gauss-Jordan inverse of a nonsingular square matrix.
inline QMat inverse(QMat a) {
  const std::size_t n = a.size();
  QMat inv(n, QVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Q piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Q f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

inline QMat transpose(const QMat& a) {
  QMat t(a[0].size(), QVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline QMat sub(QMat a, const QMat& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) a[i][j] -= b[i][j];
  return a;
}

}  // namespace oracle
