#pragma once

// Drinfeld and Heisenberg double Poisson structures evaluated at group points,
// in the right-trivialized frame. Covectors are identified with vectors via
// the invariant form B, so the covector attached to y is B y. A bivector with
// component matrix P (Pi = sum P_ab e_a ⊗ e_b) has sharp map alpha ↦ Pᵀ alpha,
// hence sharp matrix S = Pᵀ B = -P B on form-identified covectors.

#include "manin/group.hpp"
#include "manin/manin_triple.hpp"

#include <optional>

namespace manin {

enum class Variant { Drinfeld, Heisenberg };

inline const char* to_string(Variant v) { return v == Variant::Drinfeld ? "drinfeld" : "heisenberg"; }

inline Variant parse_variant(const std::string& s) {
  if (s == "drinfeld") return Variant::Drinfeld;
  if (s == "heisenberg") return Variant::Heisenberg;
  throw std::invalid_argument("unknown variant '" + s + "' (expected drinfeld or heisenberg)");
}

/// An antisymmetric 2-tensor at a point, in the right-trivialized frame of d
/// (frame == nullopt) or in the coordinates of a quotient frame.
struct Bivector {
  GroupPoint point;
  std::optional<QuotientFrame> frame;
  Mat tensor;                 // components in frame coordinates
  std::optional<Mat> sharp;   // y ↦ Pi♯(alpha(y)); full frame only

  std::size_t dim() const { return tensor.rows(); }
};

inline Mat sharp_from_tensor(const Mat& P, const Mat& form) { return P.transpose() * form; }
inline Mat tensor_from_sharp(const Mat& S, const Mat& form_inv) { return (S * form_inv).transpose(); }

namespace detail {

struct SharpPair {
  Mat first;   // x - Ad_d p Ad_d^{-1} y form of the lemma
  Mat second;  // -xi + Ad_d p' Ad_d^{-1} y form of the lemma
};

inline SharpPair sharp_pair(const ManinData& md, const Mat& A, const Mat& Ai, Variant v) {
  const Mat& inner_first = v == Variant::Drinfeld ? md.pplus : md.pminus;
  const Mat& inner_second = v == Variant::Drinfeld ? md.pminus : md.pplus;
  return {md.pplus - A * inner_first * Ai, -md.pminus + A * inner_second * Ai};
}

inline void require_same_group(const ManinData& md, const GroupPoint& d) {
  if (d.rep()->dim() != md.dim())
    throw std::invalid_argument("group representation does not match the Manin triple's algebra");
}

}  // namespace detail

/// Pi♯(alpha_d(y)) for the chosen double, right-trivialized. Both expressions of
/// the bundle-map lemma are evaluated and must agree exactly.
inline Vec double_sharp(const ManinData& md, const GroupPoint& d, const Vec& y, Variant v) {
  detail::require_same_group(md, d);
  md.amb().alg.check(y);
  Mat A = adjoint_matrix(d);
  Mat Ai = inverse_or_throw(A, "Ad_d");
  Vec ad_inv_y = Ai * y;
  const Mat& inner_first = v == Variant::Drinfeld ? md.pplus : md.pminus;
  const Mat& inner_second = v == Variant::Drinfeld ? md.pminus : md.pplus;
  Vec first = md.pplus * y - A * (inner_first * ad_inv_y);
  Vec second = A * (inner_second * ad_inv_y) - md.pminus * y;
  if (first != second)
    throw std::logic_error(std::string("the two sharp-map expressions disagree (") + to_string(v) + ")");
  return first;
}

inline Vec drinfeld_sharp(const ManinData& md, const GroupPoint& d, const Vec& y) {
  return double_sharp(md, d, y, Variant::Drinfeld);
}

inline Vec heisenberg_sharp(const ManinData& md, const GroupPoint& d, const Vec& y) {
  return double_sharp(md, d, y, Variant::Heisenberg);
}

/// Bivector of the chosen double at d from an already computed Ad_d. The
/// sharp matrix is assembled from the lemma, checked against the second
/// expression, checked for antisymmetry, and cross-checked against the
/// tensor formula P_r ∓ Ad_d P_r Ad_dᵀ.
inline Bivector bivector_from_adjoint(const ManinData& md, const GroupPoint& d, const Mat& A, Variant v) {
  Mat Ai = inverse_or_throw(A, "Ad_d");
  auto sp = detail::sharp_pair(md, A, Ai, v);
  if (sp.first != sp.second)
    throw std::logic_error(std::string("the two sharp-map expressions disagree (") + to_string(v) + ")");
  Mat P = tensor_from_sharp(sp.first, md.form_inv);
  if (!P.is_antisymmetric()) throw std::logic_error("double bivector is not antisymmetric");
  Mat translated = A * md.r_tensor * A.transpose();
  Mat expected = v == Variant::Drinfeld ? md.r_tensor - translated : md.r_tensor + translated;
  if (P != expected) throw std::logic_error("sharp-map assembly disagrees with the r-tensor formula");
  return Bivector{d, std::nullopt, std::move(P), std::move(sp.first)};
}

inline Bivector bivector_at(const ManinData& md, const GroupPoint& d, Variant v) {
  detail::require_same_group(md, d);
  return bivector_from_adjoint(md, d, adjoint_matrix(d), v);
}

/// The tensor induced on the quotient `target` by a bivector given in the full
/// frame or in a finer quotient frame at the same point.
inline Bivector pushforward_bivector(const QuotientFrame& target, const Bivector& b) {
  if (!(b.point == target.base_point))
    throw std::invalid_argument("pushforward between frames at different points");
  Mat N;
  if (!b.frame) {
    N = target.projection;
  } else {
    if (!target.quotient_alg.contains(b.frame->quotient_alg))
      throw std::invalid_argument("target frame does not factor through the source frame");
    const auto& fc = b.frame->free_cols;
    N = Mat(target.dim(), fc.size());
    for (std::size_t j = 0; j < fc.size(); ++j)
      for (std::size_t i = 0; i < target.dim(); ++i) N(i, j) = target.projection(i, fc[j]);
  }
  if (N.cols() != b.dim()) throw std::invalid_argument("bivector does not match its frame");
  return Bivector{b.point, target, N * b.tensor * N.transpose(), std::nullopt};
}

/// chi(r) on D/N at dN: the constant tensor r pushed through the quotient
/// frame d / Ad_d(n). Both doubles must push forward to the same tensor.
inline Bivector chi_r_at(const ManinData& md, const GroupPoint& d, const Subspace& n) {
  detail::require_same_group(md, d);
  if (!n.contains(md.triple.gplus))
    throw std::invalid_argument("chi(r) needs a subalgebra containing g+");
  Mat A = adjoint_matrix(d);
  QuotientFrame f = frame_for(d, image(A, n));
  Bivector chi{d, f, f.projection * md.r_tensor * f.projection.transpose(), std::nullopt};
  for (Variant v : {Variant::Drinfeld, Variant::Heisenberg}) {
    Bivector push = pushforward_bivector(f, bivector_from_adjoint(md, d, A, v));
    if (push.tensor != chi.tensor)
      throw std::logic_error(std::string("pushforward of the ") + to_string(v) +
                             " bivector differs from chi(r)");
  }
  return chi;
}

}  // namespace manin
