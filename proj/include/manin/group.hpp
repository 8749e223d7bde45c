#pragma once

// Block-diagonal matrix groups acting on their Lie algebra: representations,
// group points, Ad, exact exponentials of nilpotents, Bruhat decomposition and
// right-trivialized quotient frames.

#include "manin/lie_algebra.hpp"
#include "manin/weyl.hpp"

#include <memory>
#include <optional>
#include <utility>

namespace manin {

inline Mat block_diagonal(const std::vector<Mat>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  Mat m(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return m;
}

/// Faithful block-diagonal representation of a Lie algebra: one matrix image
/// per basis vector.
class MatRep {
 public:
  MatRep(std::vector<std::size_t> block_shapes, std::vector<Mat> images)
      : shapes_(std::move(block_shapes)), images_(std::move(images)) {
    std::size_t total = 0;
    for (auto s : shapes_) {
      if (s == 0) throw std::invalid_argument("empty representation block");
      offsets_.push_back(total);
      total += s;
    }
    size_ = total;
    std::vector<Vec> flat;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      const Mat& m = images_[i];
      if (m.rows() != size_ || m.cols() != size_)
        throw std::invalid_argument("image " + std::to_string(i) + " has the wrong size");
      if (!is_block_diagonal(m))
        throw std::invalid_argument("image " + std::to_string(i) + " is not block diagonal");
      flat.push_back(m.data());
    }
    coords_ = std::make_shared<Coordinates>(flat, size_ * size_);
  }

  /// Builds images from per-block matrices: blocks[i][b] is block b of basis vector i.
  static MatRep from_blocks(std::vector<std::size_t> shapes, const std::vector<std::vector<Mat>>& blocks) {
    std::vector<Mat> images;
    for (const auto& bs : blocks) {
      if (bs.size() != shapes.size()) throw std::invalid_argument("wrong number of blocks");
      for (std::size_t b = 0; b < bs.size(); ++b)
        if (bs[b].rows() != shapes[b] || bs[b].cols() != shapes[b])
          throw std::invalid_argument("block shape mismatch");
      images.push_back(block_diagonal(bs));
    }
    return MatRep(std::move(shapes), std::move(images));
  }

  std::size_t dim() const { return images_.size(); }
  std::size_t size() const { return size_; }
  const std::vector<std::size_t>& block_shapes() const { return shapes_; }
  std::size_t block_offset(std::size_t b) const { return offsets_[b]; }
  const std::vector<Mat>& images() const { return images_; }

  Mat image(const Vec& v) const {
    if (v.size() != dim()) throw std::invalid_argument("vector length does not match the representation");
    Mat m(size_, size_);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) m += v[i] * images_[i];
    return m;
  }

  std::optional<Vec> coordinates(const Mat& m) const { return coords_->solve(m.data()); }

  bool is_block_diagonal(const Mat& m) const {
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j)
        if (m(i, j) != 0 && block_of(i) != block_of(j)) return false;
    return true;
  }

  std::vector<Mat> split(const Mat& m) const {
    std::vector<Mat> out;
    for (std::size_t b = 0; b < shapes_.size(); ++b) {
      Mat blk(shapes_[b], shapes_[b]);
      for (std::size_t i = 0; i < shapes_[b]; ++i)
        for (std::size_t j = 0; j < shapes_[b]; ++j) blk(i, j) = m(offsets_[b] + i, offsets_[b] + j);
      out.push_back(std::move(blk));
    }
    return out;
  }

 private:
  std::size_t block_of(std::size_t i) const {
    std::size_t b = 0;
    while (b + 1 < offsets_.size() && offsets_[b + 1] <= i) ++b;
    return b;
  }

  std::vector<std::size_t> shapes_;
  std::vector<std::size_t> offsets_;
  std::size_t size_ = 0;
  std::vector<Mat> images_;
  std::shared_ptr<const Coordinates> coords_;
};

/// Clauses: dimension (one image per basis vector), independence (checked at
/// construction), homomorphism (matrix commutators match structure constants).
inline CheckReport validate_rep(const MatRep& rep, const LieAlg& L) {
  CheckReport out;
  const bool sized = rep.dim() == L.dim();
  out.add("dimension", sized,
          std::to_string(rep.dim()) + " images for dimension " + std::to_string(L.dim()));
  if (!sized) return out;
  std::string w;
  for (std::size_t i = 0; i < L.dim() && w.empty(); ++i)
    for (std::size_t j = i + 1; j < L.dim() && w.empty(); ++j) {
      const Mat& a = rep.images()[i];
      const Mat& b = rep.images()[j];
      if (a * b - b * a != rep.image(L.bracket_basis(i, j)))
        w = "(" + L.labels()[i] + "," + L.labels()[j] + ")";
    }
  out.add("homomorphism", w.empty(), w);
  return out;
}

class GroupPoint {
 public:
  GroupPoint() = default;
  GroupPoint(std::shared_ptr<const MatRep> rep, std::vector<Mat> blocks)
      : rep_(std::move(rep)), blocks_(std::move(blocks)) {
    if (!rep_) throw std::invalid_argument("group point without representation");
    const auto& shapes = rep_->block_shapes();
    if (blocks_.size() != shapes.size())
      throw std::invalid_argument("expected " + std::to_string(shapes.size()) + " blocks, got " +
                                  std::to_string(blocks_.size()));
    for (std::size_t b = 0; b < shapes.size(); ++b) {
      if (blocks_[b].rows() != shapes[b] || blocks_[b].cols() != shapes[b])
        throw std::invalid_argument("block " + std::to_string(b) + " has the wrong shape");
      if (determinant(blocks_[b]) == 0)
        throw std::invalid_argument("block " + std::to_string(b) + " is singular");
    }
  }

  static GroupPoint identity(std::shared_ptr<const MatRep> rep) {
    std::vector<Mat> blocks;
    for (auto s : rep->block_shapes()) blocks.push_back(Mat::identity(s));
    return GroupPoint(std::move(rep), std::move(blocks));
  }

  static GroupPoint from_full(std::shared_ptr<const MatRep> rep, const Mat& m) {
    if (!rep->is_block_diagonal(m)) throw std::invalid_argument("matrix is not block diagonal");
    auto blocks = rep->split(m);
    return GroupPoint(std::move(rep), std::move(blocks));
  }

  const std::shared_ptr<const MatRep>& rep() const { return rep_; }
  const std::vector<Mat>& blocks() const { return blocks_; }
  const Mat& block(std::size_t b) const { return blocks_.at(b); }
  Mat full() const { return block_diagonal(blocks_); }

  GroupPoint inverse() const {
    std::vector<Mat> inv;
    for (const auto& b : blocks_) inv.push_back(inverse_or_throw(b, "group point block"));
    return GroupPoint(rep_, std::move(inv));
  }

  friend GroupPoint operator*(const GroupPoint& a, const GroupPoint& b) {
    if (a.rep_ != b.rep_ && a.rep_->block_shapes() != b.rep_->block_shapes())
      throw std::invalid_argument("group points live in different groups");
    std::vector<Mat> prod;
    for (std::size_t i = 0; i < a.blocks_.size(); ++i) prod.push_back(a.blocks_[i] * b.blocks_[i]);
    return GroupPoint(a.rep_, std::move(prod));
  }

  friend bool operator==(const GroupPoint& a, const GroupPoint& b) { return a.blocks_ == b.blocks_; }

 private:
  std::shared_ptr<const MatRep> rep_;
  std::vector<Mat> blocks_;
};

/// Matrix of Ad_d on coordinate column vectors. Throws std::domain_error when
/// some conjugated basis image leaves the span of the representation.
inline Mat adjoint_matrix(const GroupPoint& d) {
  const MatRep& rep = *d.rep();
  const Mat g = d.full();
  const Mat gi = d.inverse().full();
  Mat A(rep.dim(), rep.dim());
  for (std::size_t i = 0; i < rep.dim(); ++i) {
    auto c = rep.coordinates(g * rep.images()[i] * gi);
    if (!c)
      throw std::domain_error("Ad_d maps basis vector " + std::to_string(i) +
                              " outside the represented algebra");
    for (std::size_t k = 0; k < rep.dim(); ++k) A(k, i) = (*c)[k];
  }
  return A;
}

inline Vec adjoint_action(const GroupPoint& d, const Vec& v) { return adjoint_matrix(d) * v; }

/// exp of a nilpotent matrix as a finite sum.
inline Mat exp_nilpotent_matrix(const Mat& x) {
  const std::size_t n = x.rows();
  Mat term = Mat::identity(n), sum = term;
  for (std::size_t k = 1; k <= n; ++k) {
    term = Rat(1, static_cast<long>(k)) * (term * x);
    if (term.is_zero()) return sum;
    sum += term;
  }
  throw std::domain_error("matrix is not nilpotent");
}

/// exp of a nilpotent algebra element, exact as a finite sum. Throws when the
/// image is not nilpotent.
inline GroupPoint exp_nilpotent(const std::shared_ptr<const MatRep>& rep, const Vec& v) {
  return GroupPoint::from_full(rep, exp_nilpotent_matrix(rep->image(v)));
}

enum class Borel { Plus, Minus };

inline const char* to_string(Borel b) { return b == Borel::Plus ? "B+" : "B-"; }

struct BlockBruhat {
  Mat left;   // unipotent, in the left Borel
  Perm w;
  Mat right;  // in the right Borel
};

/// g = left * weyl_representative(w) * right with left in U_{left_borel} and
/// right in right_borel, by two-sided Gaussian elimination.
inline BlockBruhat bruhat_block(const Mat& g, Borel left_borel, Borel right_borel) {
  if (!g.square()) throw std::invalid_argument("Bruhat decomposition of a non-square matrix");
  if (determinant(g) != 1) throw std::invalid_argument("Bruhat decomposition needs an SL_n block");
  const std::size_t n = g.rows();
  Mat m = g;
  Mat el = Mat::identity(n);   // accumulated row operations
  Mat er = Mat::identity(n);   // accumulated column operations
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t r = left_borel == Borel::Minus ? step : n - 1 - step;
    std::size_t c = n;
    if (right_borel == Borel::Plus) {
      for (std::size_t j = 0; j < n && c == n; ++j)
        if (m(r, j) != 0) c = j;
    } else {
      for (std::size_t j = n; j-- > 0 && c == n;)
        if (m(r, j) != 0) c = j;
    }
    if (c == n || done[c]) throw std::logic_error("Bruhat elimination met a singular pivot");
    done[c] = true;
    // Clear column c in the rows not yet processed.
    for (std::size_t i = 0; i < n; ++i) {
      const bool later = left_borel == Borel::Minus ? i > r : i < r;
      if (!later || m(i, c) == 0) continue;
      Rat f = m(i, c) / m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(r, j);
        el(i, j) -= f * el(r, j);
      }
    }
    // Clear row r on the far side of the pivot.
    for (std::size_t j = 0; j < n; ++j) {
      const bool beyond = right_borel == Borel::Plus ? j > c : j < c;
      if (!beyond || m(r, j) == 0) continue;
      Rat f = m(r, j) / m(r, c);
      for (std::size_t i = 0; i < n; ++i) {
        m(i, j) -= f * m(i, c);
        er(i, j) -= f * er(i, c);
      }
    }
  }
  Perm w(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (m(i, j) != 0) w[j] = static_cast<int>(i);
  Mat wdot = weyl_representative(w);
  Mat t = inverse_or_throw(wdot, "Weyl representative") * m;
  return {inverse_or_throw(el, "row operations"), std::move(w),
          t * inverse_or_throw(er, "column operations")};
}

/// Per block: the pair of Borels defining its cells, or nullopt to leave the
/// block out of the cell assignment (e.g. the torus factor of G x T).
using CellSpec = std::vector<std::optional<std::pair<Borel, Borel>>>;

/// g = left * weyl * right; ignored blocks carry identity left and weyl factors.
struct BruhatDecomposition {
  GroupPoint left;
  GroupPoint weyl;
  GroupPoint right;
  std::vector<Perm> cell;  // one permutation per non-ignored block
};

inline BruhatDecomposition bruhat_decompose(const GroupPoint& g, const CellSpec& spec) {
  if (spec.size() != g.blocks().size())
    throw std::invalid_argument("cell spec does not match the number of blocks");
  std::vector<Mat> left, weyl, right;
  std::vector<Perm> cell;
  for (std::size_t b = 0; b < spec.size(); ++b) {
    if (!spec[b]) {
      left.push_back(Mat::identity(g.block(b).rows()));
      weyl.push_back(Mat::identity(g.block(b).rows()));
      right.push_back(g.block(b));
      continue;
    }
    auto bb = bruhat_block(g.block(b), spec[b]->first, spec[b]->second);
    left.push_back(std::move(bb.left));
    weyl.push_back(weyl_representative(bb.w));
    right.push_back(std::move(bb.right));
    cell.push_back(std::move(bb.w));
  }
  return {GroupPoint(g.rep(), std::move(left)), GroupPoint(g.rep(), std::move(weyl)),
          GroupPoint(g.rep(), std::move(right)), std::move(cell)};
}

/// Right-trivialized frame for T_{dN}(D/N) = d / Ad_d(n), coordinatized by
/// the canonical complement spanned by the non-pivot standard basis vectors.
struct QuotientFrame {
  GroupPoint base_point;
  Subspace quotient_alg;
  Subspace complement;
  std::vector<std::size_t> free_cols;
  Mat projection;  // k x dim: coordinates of v mod quotient_alg

  std::size_t dim() const { return free_cols.size(); }

  Vec project(const Vec& v) const {
    Vec red = quotient_alg.reduce(v);
    Vec out(free_cols.size());
    for (std::size_t i = 0; i < free_cols.size(); ++i) out[i] = red[free_cols[i]];
    return out;
  }

  /// Lift of frame coordinates to the complement inside d.
  Vec lift(const Vec& c) const {
    Vec out = zero_vec(quotient_alg.ambient_dim());
    for (std::size_t i = 0; i < free_cols.size(); ++i) out[free_cols[i]] = c.at(i);
    return out;
  }

  /// Image in frame coordinates of a subspace of d.
  Subspace image_of(const Subspace& s) const {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < s.dim(); ++i) vs.push_back(project(s.vector(i)));
    return Subspace::span(vs, dim());
  }
};

inline QuotientFrame frame_for(GroupPoint base, Subspace quotient_alg) {
  const std::size_t n = quotient_alg.ambient_dim();
  auto free = quotient_alg.free_columns();
  std::vector<Vec> comp;
  for (auto j : free) comp.push_back(unit_vec(n, j));
  QuotientFrame f{std::move(base), std::move(quotient_alg), Subspace::span(comp, n), free, Mat()};
  f.projection = Mat(free.size(), n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec col = f.project(unit_vec(n, j));
    for (std::size_t i = 0; i < free.size(); ++i) f.projection(i, j) = col[i];
  }
  return f;
}

inline QuotientFrame quotient_frame(const GroupPoint& d, const Subspace& n) {
  return frame_for(d, image(adjoint_matrix(d), n));
}

}  // namespace manin
