#include "manin/flagapps.hpp"
#include "manin/sampling.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace manin;
using testutil::M;
using testutil::V;

namespace {

std::shared_ptr<const MatRep> sl_rep(std::size_t n) {
  SlBasis b = sl_basis(n);
  return std::make_shared<const MatRep>(std::vector<std::size_t>{n}, b.mats);
}

Mat sdot() { return M({{0, 1}, {-1, 0}}); }

// Ranks of the corner submatrices preserved by B_L x B_R: rows from the
// bottom (left B+) or top (left B-), columns from the left (right B+) or
// right (right B-). Two matrices share a cell iff all these ranks agree.
std::vector<std::size_t> corner_ranks(const Mat& g, Borel left, Borel right) {
  const std::size_t n = g.rows();
  std::vector<std::size_t> out;
  for (std::size_t r = 1; r <= n; ++r)
    for (std::size_t c = 1; c <= n; ++c) {
      oracle::QMat sub;
      for (std::size_t i = 0; i < r; ++i) {
        const std::size_t row = left == Borel::Minus ? i : n - 1 - i;
        oracle::QVec v;
        for (std::size_t j = 0; j < c; ++j) v.push_back(g(row, right == Borel::Plus ? j : n - 1 - j));
        sub.push_back(v);
      }
      out.push_back(oracle::rank(sub));
    }
  return out;
}

bool unipotent_in(const Mat& u, Borel b) {
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) {
      if (i == j && u(i, j) != 1) return false;
      if (b == Borel::Plus ? i > j : i < j)
        if (u(i, j) != 0) return false;
    }
  return true;
}

bool triangular_in(const Mat& m, Borel b) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if ((b == Borel::Plus ? i > j : i < j) && m(i, j) != 0) return false;
  return true;
}

const std::pair<Borel, Borel> kBorelPairs[] = {
    {Borel::Minus, Borel::Plus}, {Borel::Plus, Borel::Plus}, {Borel::Minus, Borel::Minus}, {Borel::Plus, Borel::Minus}};

}  // namespace

TEST(Adjoint, Sl2Examples) {
  auto rep = sl_rep(2);
  const Vec e = V({1, 0, 0}), f = V({0, 0, 1});
  GroupPoint t(rep, {M({{2, 0}, {0, Rat(1, 2)}})});
  EXPECT_EQ(adjoint_action(t, e), V({4, 0, 0}));
  EXPECT_EQ(adjoint_action(t, f), V({0, 0, Rat(1, 4)}));
  GroupPoint s(rep, {sdot()});
  EXPECT_EQ(adjoint_action(s, e), -1 * f);
  EXPECT_EQ(adjoint_action(s, V({0, 1, 0})), V({0, -1, 0}));
}

TEST(Adjoint, ImageLeavingRepresentationThrows) {
  // Span of e and h only: conjugating by s sends e to -f.
  SlBasis b = sl_basis(2);
  auto rep = std::make_shared<const MatRep>(std::vector<std::size_t>{2}, std::vector<Mat>{b.mats[0], b.mats[1]});
  EXPECT_THROW(adjoint_matrix(GroupPoint(rep, {sdot()})), std::domain_error);
}

TEST(Adjoint, MatchesConjugationOracle) {
  FlagCase fc = standard_triple_gxg(3);
  Rng rng = derive_rng(testutil::kSeed, 1);
  for (int iter = 0; iter < 20; ++iter) {
    GroupPoint g(fc.rep, {random_sl(rng, 3), random_sl(rng, 3)});
    Mat A = adjoint_matrix(g);
    oracle::QMat G = testutil::to_q(g.full()), Gi = testutil::to_q(g.inverse().full());
    for (std::size_t i = 0; i < fc.dim(); ++i) {
      auto conj = oracle::matmul(oracle::matmul(G, testutil::to_q(fc.rep->images()[i])), Gi);
      EXPECT_EQ(testutil::to_q(fc.rep->image(A.col(i))), conj);
    }
  }
}

TEST(Adjoint, HomomorphismAndFormInvarianceProperty) {
  for (auto kind : {CaseKind::GxT, CaseKind::GxG}) {
    FlagCase fc = standard_case(kind, 3);
    const Mat& B = fc.md->form();
    Rng rng = derive_rng(testutil::kSeed, 2, kind == CaseKind::GxT ? 0 : 1);
    CellSpec full(2, std::pair{Borel::Plus, Borel::Plus});
    if (kind == CaseKind::GxT) full[1] = std::nullopt;
    for (int iter = 0; iter < 100; ++iter) {
      GroupPoint g = random_point_for_cells(rng, fc.rep, full, iter % 2 == 1);
      GroupPoint h = random_point_for_cells(rng, fc.rep, full, false);
      Mat Ag = adjoint_matrix(g), Ah = adjoint_matrix(h);
      EXPECT_EQ(adjoint_matrix(g * h), Ag * Ah);
      EXPECT_EQ(Ag.transpose() * B * Ag, B);
      EXPECT_EQ(adjoint_matrix(g.inverse()) * Ag, Mat::identity(fc.dim()));
    }
  }
}

TEST(Exponential, NilpotentOnly) {
  Mat x = M({{0, 1, 2}, {0, 0, 3}, {0, 0, 0}});
  EXPECT_EQ(exp_nilpotent_matrix(x), M({{1, 1, Rat(7, 2)}, {0, 1, 3}, {0, 0, 1}}));
  EXPECT_THROW(exp_nilpotent_matrix(M({{1, 0}, {0, -1}})), std::domain_error);
  auto rep = sl_rep(2);
  EXPECT_EQ(exp_nilpotent(rep, V({3, 0, 0})).block(0), M({{1, 3}, {0, 1}}));
}

TEST(GroupPoint, ShapeAndSingularityChecks) {
  auto rep = sl_rep(2);
  EXPECT_THROW(GroupPoint(rep, {Mat::identity(3)}), std::invalid_argument);
  EXPECT_THROW(GroupPoint(rep, {M({{1, 2}, {2, 4}})}), std::invalid_argument);
  GroupPoint g(rep, {M({{1, 1}, {1, 2}})});
  EXPECT_EQ(g * g.inverse(), GroupPoint::identity(rep));
}

TEST(Weyl, RepresentativesAndLength) {
  for (int n = 2; n <= 4; ++n) {
    auto perms = all_perms(n);
    std::size_t fact = 1;
    for (int k = 2; k <= n; ++k) fact *= k;
    EXPECT_EQ(perms.size(), fact);
    for (const auto& w : perms) {
      Mat P = weyl_representative(w);
      EXPECT_EQ(determinant(P), 1);
      for (int j = 0; j < n; ++j) EXPECT_NE(P(w[j], j), 0);
      EXPECT_EQ(perm_from_word(n, reduced_word(w)), w);
      EXPECT_EQ(static_cast<int>(reduced_word(w).size()), perm_length(w));
    }
  }
  EXPECT_EQ(weyl_representative(simple_reflection(2, 1)), sdot());
}

TEST(Bruhat, Sl2Examples) {
  auto e = bruhat_block(Mat::identity(2), Borel::Plus, Borel::Plus);
  EXPECT_EQ(e.w, perm_identity(2));
  auto s = bruhat_block(M({{1, 0}, {1, 1}}), Borel::Plus, Borel::Plus);
  EXPECT_EQ(s.w, simple_reflection(2, 1));
  auto r = bruhat_block(sdot(), Borel::Plus, Borel::Plus);
  EXPECT_EQ(r.w, simple_reflection(2, 1));
  EXPECT_EQ(r.left, Mat::identity(2));
  EXPECT_EQ(r.right, Mat::identity(2));
  // B- e B+ is the big cell for the opposite pair.
  EXPECT_EQ(bruhat_block(M({{1, 0}, {1, 1}}), Borel::Minus, Borel::Plus).w, perm_identity(2));
  EXPECT_THROW(bruhat_block(M({{2, 0}, {0, 1}}), Borel::Plus, Borel::Plus), std::invalid_argument);
}

TEST(Bruhat, RandomSl3Recomposition) {
  Rng rng = derive_rng(testutil::kSeed, 3);
  for (int iter = 0; iter < 1000; ++iter) {
    Mat g = random_sl(rng, 3);
    const auto [L, R] = kBorelPairs[iter % 4];
    auto bb = bruhat_block(g, L, R);
    EXPECT_EQ(bb.left * weyl_representative(bb.w) * bb.right, g);
    EXPECT_TRUE(unipotent_in(bb.left, L));
    EXPECT_TRUE(triangular_in(bb.right, R));
    EXPECT_EQ(corner_ranks(g, L, R), corner_ranks(weyl_representative(bb.w), L, R));
  }
}

TEST(Bruhat, RepresentativesDecomposeToThemselves) {
  for (int n = 2; n <= 4; ++n)
    for (const auto& w : all_perms(n))
      for (const auto& [L, R] : kBorelPairs) EXPECT_EQ(bruhat_block(weyl_representative(w), L, R).w, w);
}

TEST(Bruhat, CellSamplesPartitionAcrossAllCells) {
  FlagCase fc = standard_triple_gxt(3);
  for (Variant v : {Variant::Drinfeld, Variant::Heisenberg}) {
    CellSpec cells = cell_spec(fc, v);
    Rng rng = derive_rng(testutil::kSeed, 4, static_cast<std::uint64_t>(v));
    std::set<Perm> seen;
    for (int iter = 0; iter < 300; ++iter) {
      GroupPoint g = random_point_for_cells(rng, fc.rep, cells, true);
      auto dec = bruhat_decompose(g, cells);
      ASSERT_EQ(dec.cell.size(), 1u);
      EXPECT_EQ(dec.left * dec.weyl * dec.right, g);
      std::size_t hits = 0;
      for (const auto& w : all_perms(3))
        hits += corner_ranks(g.block(0), cells[0]->first, cells[0]->second) ==
                corner_ranks(weyl_representative(w), cells[0]->first, cells[0]->second);
      EXPECT_EQ(hits, 1u);
      seen.insert(dec.cell[0]);
    }
    EXPECT_EQ(seen.size(), 6u);
  }
}

TEST(Bruhat, GxgBlocksDecomposeIndependently) {
  FlagCase fc = standard_triple_gxg(2);
  CellSpec cells = cell_spec(fc, Variant::Heisenberg);
  GroupPoint g(fc.rep, {M({{1, 0}, {1, 1}}), M({{1, 1}, {0, 1}})});
  auto dec = bruhat_decompose(g, cells);
  EXPECT_EQ(dec.cell, (std::vector<Perm>{simple_reflection(2, 1), simple_reflection(2, 1)}));
  EXPECT_EQ(dec.left * dec.weyl * dec.right, g);
}

TEST(QuotientFrame, GxtSl2AtS) {
  FlagCase fc = standard_triple_gxt(2);
  GroupPoint d(fc.rep, {sdot(), Mat::identity(2)});
  QuotientFrame f = quotient_frame(d, fc.md->nplus);
  EXPECT_EQ(f.quotient_alg, Subspace::span({V({0, 0, 1, 0}), V({0, 1, 0, 0}), V({0, 0, 0, 1})}, 4));
  EXPECT_EQ(f.complement, Subspace::span({V({1, 0, 0, 0})}, 4));
  EXPECT_EQ(f.dim(), 1u);
  EXPECT_EQ(f.project(V({5, 1, 2, 3})), V({5}));
  EXPECT_EQ(f.lift(V({2})), V({2, 0, 0, 0}));
}

TEST(QuotientFrame, ProjectionKillsQuotientAndInvertsLift) {
  FlagCase fc = standard_triple_gxg(3);
  Rng rng = derive_rng(testutil::kSeed, 5);
  for (int iter = 0; iter < 20; ++iter) {
    GroupPoint d(fc.rep, {random_sl(rng, 3), random_sl(rng, 3)});
    QuotientFrame f = quotient_frame(d, fc.md->nplus);
    for (const auto& v : f.quotient_alg.vectors()) EXPECT_TRUE(is_zero(f.project(v)));
    EXPECT_EQ(subspace_sum(f.quotient_alg, f.complement), Subspace::full(fc.dim()));
    Vec c = testutil::random_vec(rng, f.dim());
    EXPECT_EQ(f.project(f.lift(c)), c);
  }
}

TEST(Pushforward, TrivialFrames) {
  FlagCase fc = standard_triple_gxt(2);
  GroupPoint d(fc.rep, {sdot(), Mat::identity(2)});
  Bivector b = bivector_at(*fc.md, d, Variant::Heisenberg);
  Bivector same = pushforward_bivector(frame_for(d, Subspace::zero(4)), b);
  EXPECT_EQ(same.tensor, b.tensor);
  Bivector none = pushforward_bivector(frame_for(d, Subspace::full(4)), b);
  EXPECT_EQ(none.dim(), 0u);
  GroupPoint other = GroupPoint::identity(fc.rep);
  EXPECT_THROW(pushforward_bivector(frame_for(other, Subspace::zero(4)), b), std::invalid_argument);
}

TEST(Pushforward, Transitive) {
  // D -> D/H -> D/N+ agrees with D -> D/N+.
  FlagCase fc = standard_triple_gxt(3);
  Rng rng = derive_rng(testutil::kSeed, 6);
  for (int iter = 0; iter < 10; ++iter) {
    GroupPoint d(fc.rep, {random_sl(rng, 3), random_torus(rng, 3)});
    Bivector b = bivector_at(*fc.md, d, Variant::Drinfeld);
    QuotientFrame fh = quotient_frame(d, fc.md->h), fn = quotient_frame(d, fc.md->nplus);
    EXPECT_EQ(pushforward_bivector(fn, pushforward_bivector(fh, b)).tensor, pushforward_bivector(fn, b).tensor);
    EXPECT_THROW(pushforward_bivector(fh, pushforward_bivector(fn, b)), std::invalid_argument);
  }
}
