#pragma once

// Lie algebras given by structure constants in a fixed ordered basis, and
// quadratic Lie algebras (a Lie algebra plus an invariant symmetric form).

#include "manin/check_report.hpp"
#include "manin/subspace.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace manin {

class LieAlg {
 public:
  LieAlg() = default;

  /// `c` is indexed as c[(i * dim + j) * dim + k] with [e_i, e_j] = sum_k c_ijk e_k.
  LieAlg(std::size_t dim, std::vector<std::string> labels, std::vector<Rat> c)
      : dim_(dim), labels_(std::move(labels)), c_(std::move(c)) {
    if (labels_.empty())
      for (std::size_t i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i + 1));
    if (labels_.size() != dim_)
      throw std::invalid_argument("expected " + std::to_string(dim_) + " basis labels");
    if (c_.size() != dim_ * dim_ * dim_)
      throw std::invalid_argument("structure-constant tensor must have dim^3 entries");
  }

  static LieAlg abelian(std::size_t dim, std::vector<std::string> labels = {}) {
    return LieAlg(dim, std::move(labels), std::vector<Rat>(dim * dim * dim, Rat(0)));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Rat& c(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }
  const std::vector<Rat>& struct_const() const { return c_; }

  Vec bracket(const Vec& x, const Vec& y) const {
    check(x);
    check(y);
    Vec out = zero_vec(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (y[j] == 0) continue;
        Rat f = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k)
          if (c(i, j, k) != 0) out[k] += f * c(i, j, k);
      }
    }
    return out;
  }

  Vec bracket_basis(std::size_t i, std::size_t j) const {
    Vec out(dim_);
    for (std::size_t k = 0; k < dim_; ++k) out[k] = c(i, j, k);
    return out;
  }

  /// Matrix of ad_x acting on column coordinate vectors.
  Mat ad(const Vec& x) const {
    check(x);
    Mat m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (c(i, j, k) != 0) m(k, j) += x[i] * c(i, j, k);
    }
    return m;
  }

  void check(const Vec& v) const {
    if (v.size() != dim_)
      throw std::invalid_argument("vector of length " + std::to_string(v.size()) +
                                  " in a Lie algebra of dimension " + std::to_string(dim_));
  }

  friend bool operator==(const LieAlg&, const LieAlg&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<Rat> c_;
};

/// K(x, y) = tr(ad x ad y) on basis vectors.
inline Mat killing_form(const LieAlg& L) {
  const std::size_t n = L.dim();
  std::vector<Mat> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(L.ad(unit_vec(n, i)));
  Mat k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      k(i, j) = (ads[i] * ads[j]).trace();
      k(j, i) = k(i, j);
    }
  return k;
}

/// Structure constants of the span of linearly independent square matrices
/// closed under the commutator. Throws if the span is not closed.
inline LieAlg lie_from_matrices(const std::vector<Mat>& basis, std::vector<std::string> labels = {}) {
  if (basis.empty()) return LieAlg::abelian(0, std::move(labels));
  const std::size_t m = basis.front().rows();
  auto flat = [m](const Mat& a) {
    if (!a.square() || a.rows() != m)
      throw std::invalid_argument("matrix basis elements must share one square shape");
    return a.data();
  };
  std::vector<Vec> rows;
  for (const auto& b : basis) rows.push_back(flat(b));
  Coordinates coords(rows, m * m);
  const std::size_t n = basis.size();
  std::vector<Rat> c(n * n * n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Mat comm = basis[i] * basis[j] - basis[j] * basis[i];
      auto coeff = coords.solve(flat(comm));
      if (!coeff)
        throw std::invalid_argument("matrix span is not closed under the commutator at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      for (std::size_t k = 0; k < n; ++k) {
        c[(i * n + j) * n + k] = (*coeff)[k];
        c[(j * n + i) * n + k] = -(*coeff)[k];
      }
    }
  return LieAlg(n, std::move(labels), std::move(c));
}

struct QuadLie {
  LieAlg alg;
  Mat form;

  std::size_t dim() const { return alg.dim(); }
  Rat pair(const Vec& x, const Vec& y) const {
    alg.check(x);
    alg.check(y);
    return dot(x, form * y);
  }
};

namespace detail {
inline std::string triple_witness(const LieAlg& L, std::size_t i, std::size_t j, std::size_t k,
                                  const std::string& detail) {
  std::ostringstream os;
  os << "(" << i << "," << j << "," << k << ")=(" << L.labels()[i] << "," << L.labels()[j] << ","
     << L.labels()[k] << ")";
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}
}  // namespace detail

/// Clauses: antisymmetry, jacobi, form-shape, form-symmetry, form-invertibility,
/// invariance. Witnesses name the lexicographically first failing triple.
inline CheckReport validate_quadratic_lie(const QuadLie& Q) {
  const LieAlg& L = Q.alg;
  const std::size_t n = L.dim();
  CheckReport rep;

  std::string w;
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    for (std::size_t j = 0; j < n && w.empty(); ++j)
      for (std::size_t k = 0; k < n && w.empty(); ++k)
        if (L.c(i, j, k) != -L.c(j, i, k))
          w = detail::triple_witness(L, i, j, k, "c_ijk != -c_jik");
  rep.add("antisymmetry", w.empty(), w);

  w.clear();
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    for (std::size_t j = 0; j < n && w.empty(); ++j)
      for (std::size_t k = 0; k < n && w.empty(); ++k) {
        Vec ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
        Vec s = L.bracket(L.bracket(ei, ej), ek) + L.bracket(L.bracket(ej, ek), ei) +
                L.bracket(L.bracket(ek, ei), ej);
        if (!is_zero(s)) w = detail::triple_witness(L, i, j, k, "cyclic sum nonzero");
      }
  rep.add("jacobi", w.empty(), w);

  const bool shaped = Q.form.square() && Q.form.rows() == n;
  rep.add("form-shape", shaped,
          "form is " + std::to_string(Q.form.rows()) + "x" + std::to_string(Q.form.cols()));
  if (!shaped) return rep;

  w.clear();
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    for (std::size_t j = i + 1; j < n && w.empty(); ++j)
      if (Q.form(i, j) != Q.form(j, i))
        w = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  rep.add("form-symmetry", w.empty(), w);
  rep.add("form-invertibility", determinant(Q.form) != 0, "determinant is 0");

  w.clear();
  for (std::size_t i = 0; i < n && w.empty(); ++i)
    for (std::size_t j = 0; j < n && w.empty(); ++j)
      for (std::size_t k = 0; k < n && w.empty(); ++k) {
        Rat lhs = Q.pair(L.bracket_basis(i, j), unit_vec(n, k));
        Rat rhs = Q.pair(unit_vec(n, i), L.bracket_basis(j, k));
        if (lhs != rhs)
          w = detail::triple_witness(L, i, j, k,
                                     "<[x,y],z>=" + to_string(lhs) + " <x,[y,z]>=" + to_string(rhs));
      }
  rep.add("invariance", w.empty(), w);
  return rep;
}

inline void check_ambient(const LieAlg& L, const Subspace& s) {
  if (s.ambient_dim() != L.dim())
    throw std::invalid_argument("subspace ambient dimension " + std::to_string(s.ambient_dim()) +
                                " does not match algebra dimension " + std::to_string(L.dim()));
}

/// {x : [x, l] ⊆ l}, as the kernel of x ↦ ([x, b_i] mod l)_i.
inline Subspace lie_normalizer(const LieAlg& L, const Subspace& l) {
  check_ambient(L, l);
  const std::size_t n = L.dim();
  if (l.is_zero() || l.is_full()) return Subspace::full(n);
  Mat sys(n * l.dim(), n);
  for (std::size_t x = 0; x < n; ++x) {
    Vec ex = unit_vec(n, x);
    for (std::size_t i = 0; i < l.dim(); ++i) {
      Vec r = l.reduce(L.bracket(ex, l.vector(i)));
      for (std::size_t k = 0; k < n; ++k) sys(i * n + k, x) = r[k];
    }
  }
  return Subspace::span(kernel(sys), n);
}

inline Subspace lie_normalizer(const QuadLie& Q, const Subspace& l) { return lie_normalizer(Q.alg, l); }

/// {x : [x, l] = 0}.
inline Subspace lie_centralizer(const LieAlg& L, const Subspace& l) {
  check_ambient(L, l);
  const std::size_t n = L.dim();
  Mat sys(n * l.dim(), n);
  for (std::size_t x = 0; x < n; ++x) {
    Vec ex = unit_vec(n, x);
    for (std::size_t i = 0; i < l.dim(); ++i) {
      Vec r = L.bracket(ex, l.vector(i));
      for (std::size_t k = 0; k < n; ++k) sys(i * n + k, x) = r[k];
    }
  }
  return Subspace::span(kernel(sys), n);
}

/// Empty string when closed, otherwise the first offending basis pair.
inline std::string subalgebra_witness(const LieAlg& L, const Subspace& l) {
  check_ambient(L, l);
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j)
      if (!l.contains(L.bracket(l.vector(i), l.vector(j))))
        return "[b" + std::to_string(i) + ",b" + std::to_string(j) + "] not in subspace";
  return {};
}

inline bool is_subalgebra(const LieAlg& L, const Subspace& l) { return subalgebra_witness(L, l).empty(); }

/// Clauses: closed, isotropic, half-dimension.
inline CheckReport is_lagrangian_subalgebra(const QuadLie& Q, const Subspace& l) {
  check_ambient(Q.alg, l);
  CheckReport rep;
  std::string w = subalgebra_witness(Q.alg, l);
  rep.add("closed", w.empty(), w);
  w.clear();
  for (std::size_t i = 0; i < l.dim() && w.empty(); ++i)
    for (std::size_t j = i; j < l.dim() && w.empty(); ++j) {
      Rat v = Q.pair(l.vector(i), l.vector(j));
      if (v != 0)
        w = "<b" + std::to_string(i) + ",b" + std::to_string(j) + ">=" + to_string(v);
    }
  rep.add("isotropic", w.empty(), w);
  const bool half = Q.dim() % 2 == 0 && 2 * l.dim() == Q.dim();
  rep.add("half-dimension", half,
          "dim " + std::to_string(l.dim()) + " in ambient dim " + std::to_string(Q.dim()));
  return rep;
}

}  // namespace manin
