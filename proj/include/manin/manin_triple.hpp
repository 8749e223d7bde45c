#pragma once

// Manin triples, dual bases, the standard r-matrix and the Schouten square.

#include "manin/lie_algebra.hpp"

#include <utility>

namespace manin {

struct ManinTriple {
  QuadLie amb;
  Subspace gplus;
  Subspace gminus;

  std::size_t dim() const { return amb.dim(); }
};

/// Clauses are prefixed "quad:", "gplus:", "gminus:" followed by "transversal"
/// and "complementary".
inline CheckReport validate_manin_triple(const ManinTriple& t) {
  CheckReport rep;
  rep.merge(validate_quadratic_lie(t.amb), "quad:");
  const std::size_t n = t.dim();
  const bool shaped = t.gplus.ambient_dim() == n && t.gminus.ambient_dim() == n;
  rep.add("subspace-shape", shaped, "subspace ambient dimension differs from dim d");
  if (!shaped || !rep.passed()) return rep;
  rep.merge(is_lagrangian_subalgebra(t.amb, t.gplus), "gplus:");
  rep.merge(is_lagrangian_subalgebra(t.amb, t.gminus), "gminus:");
  Subspace cap = subspace_intersect(t.gplus, t.gminus);
  rep.add("transversal", cap.is_zero(),
          "intersection has dimension " + std::to_string(cap.dim()));
  rep.add("complementary", t.gplus.dim() + t.gminus.dim() == n,
          std::to_string(t.gplus.dim()) + " + " + std::to_string(t.gminus.dim()) +
              " != " + std::to_string(n));
  return rep;
}

inline void require_valid(const ManinTriple& t) {
  auto rep = validate_manin_triple(t);
  if (auto f = rep.first_failure())
    throw std::invalid_argument("invalid Manin triple: clause " + f->name + " failed (" +
                                f->witness + ")");
}

struct DualBasisPair {
  std::vector<Vec> xs;   // basis of g+
  std::vector<Vec> xis;  // basis of g-, <x_i, xi_j> = delta_ij
};

/// Dual basis in g- for a caller-chosen basis `xs` of g+.
inline DualBasisPair dual_bases(const ManinTriple& t, std::vector<Vec> xs) {
  const std::size_t k = t.gminus.dim();
  if (xs.size() != t.gplus.dim() || Subspace::span(xs, t.dim()) != t.gplus)
    throw std::invalid_argument("xs is not a basis of g+");
  Mat gram(k, k);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t l = 0; l < k; ++l) gram(i, l) = t.amb.pair(xs[i], t.gminus.vector(l));
  Mat coeff = inverse_or_throw(gram, "Gram matrix of g+ against g-").transpose();
  DualBasisPair out{std::move(xs), {}};
  for (std::size_t j = 0; j < k; ++j) {
    Vec xi = zero_vec(t.dim());
    for (std::size_t l = 0; l < k; ++l)
      if (coeff(j, l) != 0) xi = xi + coeff(j, l) * t.gminus.vector(l);
    out.xis.push_back(std::move(xi));
  }
  return out;
}

inline DualBasisPair dual_bases(const ManinTriple& t) { return dual_bases(t, t.gplus.vectors()); }

/// r = 1/2 sum_{a,b} coeff[a][b] e_a ⊗ e_b.
struct RMatrix {
  Mat coeff;

  /// Component matrix of r itself, i.e. coeff / 2.
  Mat tensor() const { return Rat(1, 2) * coeff; }
};

inline RMatrix build_rmatrix(const DualBasisPair& db, std::size_t dim) {
  Mat coeff(dim, dim);
  for (std::size_t j = 0; j < db.xs.size(); ++j) {
    const Vec& x = db.xs[j];
    const Vec& xi = db.xis[j];
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) coeff(a, b) += xi[a] * x[b] - x[a] * xi[b];
  }
  return {std::move(coeff)};
}

inline RMatrix build_rmatrix(const ManinTriple& t) { return build_rmatrix(dual_bases(t), t.dim()); }

inline std::pair<Vec, Vec> manin_projections(const ManinTriple& t, const Vec& v) {
  DirectSum ds(t.gplus, t.gminus);
  return {ds.project_first(v), ds.project_second(v)};
}

/// Dense rank-3 tensor over the algebra's basis.
struct Tensor3 {
  std::size_t n = 0;
  std::vector<Rat> data;

  explicit Tensor3(std::size_t dim = 0) : n(dim), data(dim * dim * dim, Rat(0)) {}
  Rat& operator()(std::size_t a, std::size_t b, std::size_t c) { return data[(a * n + b) * n + c]; }
  const Rat& operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return data[(a * n + b) * n + c];
  }
  bool is_zero() const { return manin::is_zero(data); }
};

/// The algebraic Schouten square [r, r] = [r12,r13] + [r12,r23] + [r13,r23]
/// for the tensor r with components `r(a, b)`.
inline Tensor3 schouten_tensor(const LieAlg& L, const Mat& r) {
  const std::size_t n = L.dim();
  struct Entry {
    std::size_t i, j, k;
    Rat v;
  };
  std::vector<Entry> nz;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (L.c(i, j, k) != 0) nz.push_back({i, j, k, L.c(i, j, k)});

  // U[b][c][x] = sum_a r[a][b] c(a,c,x);  V[b][x][d] = sum_c c(b,c,x) r[c][d];
  // W[b][c][x] = sum_d r[c][d] c(b,d,x).
  Tensor3 U(n), V(n), W(n);
  for (const auto& e : nz)
    for (std::size_t m = 0; m < n; ++m) {
      if (r(e.i, m) != 0) U(m, e.j, e.k) += r(e.i, m) * e.v;
      if (r(e.j, m) != 0) V(e.i, e.k, m) += e.v * r(e.j, m);
      if (r(m, e.j) != 0) W(e.i, m, e.k) += r(m, e.j) * e.v;
    }
  Tensor3 out(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t s = 0; s < n; ++s) {
        Rat acc = 0;
        for (std::size_t m = 0; m < n; ++m) {
          if (r(m, s) != 0 && U(q, m, p) != 0) acc += U(q, m, p) * r(m, s);  // T1[p][q][s]
          if (r(p, m) != 0) {
            if (V(m, q, s) != 0) acc += r(p, m) * V(m, q, s);  // T2[p][q][s]
            if (W(m, q, s) != 0) acc += r(p, m) * W(m, q, s);  // T3[p][q][s]
          }
        }
        out(p, q, s) = acc;
      }
  return out;
}

/// Clauses: alternating ([r,r] lies in ∧³), ad-invariant.
inline CheckReport schouten_square(const ManinTriple& t, const RMatrix& r) {
  const LieAlg& L = t.amb.alg;
  const std::size_t n = L.dim();
  Tensor3 s = schouten_tensor(L, r.tensor());
  CheckReport rep;

  std::string w;
  for (std::size_t a = 0; a < n && w.empty(); ++a)
    for (std::size_t b = 0; b < n && w.empty(); ++b)
      for (std::size_t c = 0; c < n && w.empty(); ++c)
        if (s(a, b, c) != -s(b, a, c) || s(a, b, c) != -s(a, c, b))
          w = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  rep.add("alternating", w.empty(), w);

  w.clear();
  for (std::size_t y = 0; y < n && w.empty(); ++y) {
    Tensor3 acc(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t p = 0; p < n; ++p) {
        const Rat& cy = L.c(y, a, p);
        if (cy == 0) continue;
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t v = 0; v < n; ++v) {
            if (s(a, u, v) != 0) acc(p, u, v) += cy * s(a, u, v);
            if (s(u, a, v) != 0) acc(u, p, v) += cy * s(u, a, v);
            if (s(u, v, a) != 0) acc(u, v, p) += cy * s(u, v, a);
          }
      }
    if (!acc.is_zero()) w = "ad_" + L.labels()[y] + " [r,r] != 0";
  }
  rep.add("ad-invariant", w.empty(), w);
  return rep;
}

inline CheckReport schouten_square(const ManinTriple& t) { return schouten_square(t, build_rmatrix(t)); }

/// Everything derived from a validated triple that the Poisson and section
/// checks reuse: projections, r, the form inverse, and n±, h.
struct ManinData {
  ManinTriple triple;
  Mat pplus;        // p+ as a matrix on column vectors
  Mat pminus;       // p- = 1 - p+
  RMatrix r;
  Mat r_tensor;     // coeff / 2
  Mat form_inv;
  Subspace nplus;   // normalizer of g+
  Subspace nminus;  // normalizer of g-
  Subspace h;       // nplus ∩ nminus

  explicit ManinData(ManinTriple t) : triple(std::move(t)) {
    require_valid(triple);
    const std::size_t n = triple.dim();
    DirectSum ds(triple.gplus, triple.gminus);
    pplus = ds.projector();
    pminus = Mat::identity(n) - pplus;
    r = build_rmatrix(triple);
    r_tensor = r.tensor();
    form_inv = inverse_or_throw(triple.amb.form, "invariant form");
    nplus = lie_normalizer(triple.amb.alg, triple.gplus);
    nminus = lie_normalizer(triple.amb.alg, triple.gminus);
    h = subspace_intersect(nplus, nminus);
  }

  std::size_t dim() const { return triple.dim(); }
  const QuadLie& amb() const { return triple.amb; }
  const Mat& form() const { return triple.amb.form; }
};

}  // namespace manin
