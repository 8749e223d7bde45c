#pragma once

// Seeded generation of exact rational group elements. Subgroup elements are
// produced by construction (exponentials of nilpotents, rational diagonal
// matrices), never recognized after the fact.

#include "manin/group.hpp"

#include <cstdint>
#include <random>

namespace manin {

using Rng = std::mt19937_64;

/// Independent stream for a (seed, a, b) triple, so results do not depend on
/// the order in which work items run.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return Rng(seq);
}

inline Rat random_int(Rng& rng, int lo, int hi) {
  return Rat(std::uniform_int_distribution<int>(lo, hi)(rng));
}

inline Rat random_nonzero_rat(Rng& rng) {
  static const int nums[] = {-3, -2, -1, 1, 2, 3};
  std::uniform_int_distribution<int> pick(0, 5), den(1, 3);
  Rat r(nums[pick(rng)], den(rng));
  r.canonicalize();
  return r;
}

/// Random element of SL_n with small rational entries.
inline Mat random_sl(Rng& rng, std::size_t n) {
  for (;;) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = random_int(rng, -3, 3);
    Rat det = determinant(m);
    if (det == 0) continue;
    for (std::size_t j = 0; j < n; ++j) m(0, j) /= det;
    return m;
  }
}

/// Random diagonal matrix of determinant 1.
inline Mat random_torus(Rng& rng, std::size_t n) {
  Mat m(n, n);
  Rat prod = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m(i, i) = random_nonzero_rat(rng);
    prod *= m(i, i);
  }
  m(n - 1, n - 1) = 1 / prod;
  return m;
}

/// Random unipotent element of U+ (upper) or U- (lower).
inline Mat random_unipotent(Rng& rng, std::size_t n, Borel b) {
  Mat x(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b == Borel::Plus ? j > i : j < i) x(i, j) = random_int(rng, -2, 2);
  return exp_nilpotent_matrix(x);
}

inline Mat random_borel(Rng& rng, std::size_t n, Borel b) { return random_torus(rng, n) * random_unipotent(rng, n, b); }

/// Random point of D for a cell spec: SL_n blocks where a cell is declared,
/// diagonal (torus) blocks where the spec ignores the block. With
/// `cell_biased` each SL block is u * wdot * b for a uniformly drawn w, so
/// small cells are hit as often as the open one.
inline GroupPoint random_point_for_cells(Rng& rng, const std::shared_ptr<const MatRep>& rep,
                                         const CellSpec& cells, bool cell_biased) {
  std::vector<Mat> blocks;
  const auto& shapes = rep->block_shapes();
  for (std::size_t b = 0; b < shapes.size(); ++b) {
    const std::size_t n = shapes[b];
    if (!cells.at(b)) {
      blocks.push_back(random_torus(rng, n));
    } else if (!cell_biased) {
      blocks.push_back(random_sl(rng, n));
    } else {
      auto perms = all_perms(static_cast<int>(n));
      std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
      Mat w = weyl_representative(perms[pick(rng)]);
      blocks.push_back(random_unipotent(rng, n, cells[b]->first) * w *
                       random_borel(rng, n, cells[b]->second));
    }
  }
  return GroupPoint(rep, std::move(blocks));
}

}  // namespace manin
