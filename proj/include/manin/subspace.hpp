#pragma once

// Subspaces of Q^n in canonical reduced row-echelon form. Two subspaces are
// equal exactly when their basis matrices are identical, so equality and
// containment reduce to matrix comparisons.

#include "manin/matrix.hpp"

#include <string>

namespace manin {

class Subspace {
 public:
  Subspace() = default;

  /// Row space of `m` (rows are spanning vectors; `m.cols()` is the ambient dimension).
  explicit Subspace(Mat m) : ambient_(m.cols()) {
    auto piv = rref_in_place(m);
    basis_ = Mat(piv.size(), ambient_);
    for (std::size_t i = 0; i < piv.size(); ++i)
      for (std::size_t j = 0; j < ambient_; ++j) basis_(i, j) = m(i, j);
    pivots_ = std::move(piv);
  }

  static Subspace zero(std::size_t n) { return Subspace(Mat(0, n)); }
  static Subspace full(std::size_t n) { return Subspace(Mat::identity(n)); }
  static Subspace span(const std::vector<Vec>& vectors, std::size_t n) {
    return Subspace(Mat::from_rows(vectors, n));
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vec vector(std::size_t i) const { return basis_.row(i); }
  std::vector<Vec> vectors() const { return basis_.row_list(); }

  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  /// Reduces `v` modulo this subspace: the result has zeros at every pivot
  /// column and differs from `v` by an element of the subspace.
  Vec reduce(Vec v) const {
    check_vector(v);
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      Rat f = v[pivots_[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (basis_(i, j) != 0) v[j] -= f * basis_(i, j);
    }
    return v;
  }

  bool contains(const Vec& v) const { return manin::is_zero(reduce(v)); }
  bool contains(const Subspace& other) const {
    check_ambient(other);
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.vector(i))) return false;
    return true;
  }

  /// Standard basis indices not used as pivots: they span the canonical complement.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    std::size_t p = 0;
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (p < pivots_.size() && pivots_[p] == j) {
        ++p;
        continue;
      }
      out.push_back(j);
    }
    return out;
  }

  void check_ambient(const Subspace& other) const {
    if (other.ambient_ != ambient_)
      throw std::invalid_argument("ambient dimension mismatch: " + std::to_string(ambient_) +
                                  " vs " + std::to_string(other.ambient_));
  }
  void check_vector(const Vec& v) const {
    if (v.size() != ambient_)
      throw std::invalid_argument("vector of length " + std::to_string(v.size()) +
                                  " in ambient dimension " + std::to_string(ambient_));
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace rref_canonical(const Mat& m) { return Subspace(m); }

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  a.check_ambient(b);
  Mat stacked(a.dim() + b.dim(), a.ambient_dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.ambient_dim(); ++j) stacked(i, j) = a.basis()(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.ambient_dim(); ++j) stacked(a.dim() + i, j) = b.basis()(i, j);
  return Subspace(std::move(stacked));
}

/// a ∩ b from the kernel of the stacked coefficient system  Σ αᵢaᵢ − Σ βⱼbⱼ = 0.
inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  a.check_ambient(b);
  const std::size_t n = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return Subspace::zero(n);
  Mat system(n, a.dim() + b.dim());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < a.dim(); ++i) system(j, i) = a.basis()(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i) system(j, a.dim() + i) = -b.basis()(i, j);
  }
  std::vector<Vec> vectors;
  for (const auto& coeffs : kernel(system)) {
    Vec v = zero_vec(n);
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (coeffs[i] != 0)
        for (std::size_t j = 0; j < n; ++j) v[j] += coeffs[i] * a.basis()(i, j);
    vectors.push_back(std::move(v));
  }
  return Subspace::span(vectors, n);
}

inline void require_nondegenerate_symmetric(const Mat& form, std::size_t n) {
  if (!form.square() || form.rows() != n)
    throw std::invalid_argument("form must be square of size " + std::to_string(n));
  if (!form.is_symmetric()) throw std::invalid_argument("form is not symmetric");
  if (determinant(form) == 0) throw std::invalid_argument("form is singular");
}

/// { v : form(v, a) = 0 } for a symmetric nondegenerate form.
inline Subspace orth_complement(const Subspace& a, const Mat& form) {
  const std::size_t n = a.ambient_dim();
  require_nondegenerate_symmetric(form, n);
  if (a.is_zero()) return Subspace::full(n);
  return Subspace::span(kernel(a.basis() * form), n);
}

/// Image of a subspace under a linear map given as a matrix acting on column vectors.
inline Subspace image(const Mat& map, const Subspace& s) {
  if (map.cols() != s.ambient_dim())
    throw std::invalid_argument("linear map does not act on the subspace's ambient space");
  if (s.is_zero()) return Subspace::zero(map.rows());
  return Subspace(s.basis() * map.transpose());
}

/// Precomputed splitting of the ambient space as a direct sum a ⊕ b.
class DirectSum {
 public:
  DirectSum(Subspace a, Subspace b) : a_(std::move(a)), b_(std::move(b)) {
    a_.check_ambient(b_);
    const std::size_t n = a_.ambient_dim();
    if (a_.dim() + b_.dim() != n || !subspace_intersect(a_, b_).is_zero())
      throw std::invalid_argument("subspaces do not form a direct-sum decomposition");
    // Columns of `stacked` are the basis of a followed by the basis of b.
    Mat stacked(n, n);
    for (std::size_t i = 0; i < a_.dim(); ++i)
      for (std::size_t j = 0; j < n; ++j) stacked(j, i) = a_.basis()(i, j);
    for (std::size_t i = 0; i < b_.dim(); ++i)
      for (std::size_t j = 0; j < n; ++j) stacked(j, a_.dim() + i) = b_.basis()(i, j);
    Mat inv = inverse_or_throw(stacked, "direct-sum basis");
    Mat keep_a(n, n);
    for (std::size_t i = 0; i < a_.dim(); ++i) keep_a(i, i) = 1;
    projector_a_ = stacked * keep_a * inv;
  }

  const Subspace& first() const { return a_; }
  const Subspace& second() const { return b_; }
  /// Projection onto the first summand along the second, as a matrix.
  const Mat& projector() const { return projector_a_; }

  Vec project_first(const Vec& v) const { return projector_a_ * v; }
  Vec project_second(const Vec& v) const { return v - projector_a_ * v; }

 private:
  Subspace a_, b_;
  Mat projector_a_;
};

/// Component of v in a along b.
inline Vec project_along(const Vec& v, const Subspace& a, const Subspace& b) {
  a.check_vector(v);
  return DirectSum(a, b).project_first(v);
}

/// Coordinates with respect to a fixed linearly independent family.
class Coordinates {
 public:
  explicit Coordinates(std::vector<Vec> family, std::size_t ambient)
      : family_(Mat::from_rows(family, ambient)) {
    const std::size_t k = family_.rows();
    Mat aug(k, ambient + k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < ambient; ++j) aug(i, j) = family_(i, j);
      aug(i, ambient + i) = 1;
    }
    auto piv = rref_in_place(aug);
    for (auto p : piv)
      if (p >= ambient) throw std::invalid_argument("family is linearly dependent");
    pivots_ = piv;
    // With R = E * F in RREF, coordinates of v in F are E^T applied to v at the pivots.
    transfer_ = Mat(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) transfer_(j, i) = aug(i, ambient + j);
  }

  std::size_t size() const { return family_.rows(); }
  std::size_t ambient_dim() const { return family_.cols(); }

  /// c with v = sum c_i family_i, or nullopt when v lies outside the span.
  std::optional<Vec> solve(const Vec& v) const {
    if (v.size() != ambient_dim())
      throw std::invalid_argument("vector length does not match the family");
    Vec w(pivots_.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i) w[i] = v[pivots_[i]];
    Vec c = transfer_ * w;
    Vec back = zero_vec(ambient_dim());
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0)
        for (std::size_t j = 0; j < ambient_dim(); ++j)
          if (family_(i, j) != 0) back[j] += c[i] * family_(i, j);
    if (back != v) return std::nullopt;
    return c;
  }

 private:
  Mat family_;
  Mat transfer_;
  std::vector<std::size_t> pivots_;
};

}  // namespace manin
