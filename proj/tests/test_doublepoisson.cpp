#include "manin/flagapps.hpp"
#include "manin/sampling.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace manin;
using testutil::M;
using testutil::V;

namespace {

// p+ from the basis matrices: columns [g+ | g-], keep the g+ coordinates.
oracle::QMat projector_oracle(const ManinTriple& t) {
  const std::size_t n = t.dim();
  oracle::QMat cols;
  for (const auto& v : t.gplus.vectors()) cols.push_back(testutil::to_q(Mat::from_rows({v}, n))[0]);
  const std::size_t k = cols.size();
  for (const auto& v : t.gminus.vectors()) cols.push_back(testutil::to_q(Mat::from_rows({v}, n))[0]);
  oracle::QMat basis = oracle::transpose(cols);
  oracle::QMat coords = oracle::inverse(basis);
  for (std::size_t i = k; i < n; ++i)
    for (auto& x : coords[i]) x = 0;
  return oracle::matmul(basis, coords);
}

oracle::QVec mulv(const oracle::QMat& m, const oracle::QVec& v) {
  oracle::QVec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

oracle::QVec qv(const Vec& v) { return oracle::QVec(v.begin(), v.end()); }

// Both expressions of the sharp map, evaluated with oracle matrices.
std::pair<oracle::QVec, oracle::QVec> sharp_oracle(const ManinTriple& t, const Mat& Ad, const Vec& y, Variant v) {
  const std::size_t n = t.dim();
  oracle::QMat pp = projector_oracle(t), pm(n, oracle::QVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pm[i][j] = (i == j ? 1 : 0) - pp[i][j];
  oracle::QMat A = testutil::to_q(Ad), Ai = oracle::inverse(A);
  const oracle::QMat& in1 = v == Variant::Drinfeld ? pp : pm;
  const oracle::QMat& in2 = v == Variant::Drinfeld ? pm : pp;
  oracle::QVec z = mulv(Ai, qv(y));
  oracle::QVec a = mulv(pp, qv(y)), b = mulv(A, mulv(in1, z));
  oracle::QVec c = mulv(A, mulv(in2, z)), d = mulv(pm, qv(y));
  oracle::QVec first(n), second(n);
  for (std::size_t i = 0; i < n; ++i) {
    first[i] = a[i] - b[i];
    second[i] = c[i] - d[i];
  }
  return {first, second};
}

GroupPoint random_point(Rng& rng, const FlagCase& fc) {
  if (fc.kind == CaseKind::GxT) return GroupPoint(fc.rep, {random_sl(rng, fc.n), random_torus(rng, fc.n)});
  return GroupPoint(fc.rep, {random_sl(rng, fc.n), random_sl(rng, fc.n)});
}

std::vector<FlagCase> cases() {
  return {standard_triple_gxt(2), standard_triple_gxt(3), standard_triple_gxg(2), standard_triple_gxg(3)};
}

Mat sdot() { return M({{0, 1}, {-1, 0}}); }

}  // namespace

TEST(DoublePoisson, IdentityValues) {
  for (const auto& fc : cases()) {
    GroupPoint e = GroupPoint::identity(fc.rep);
    Bivector pi = bivector_at(*fc.md, e, Variant::Drinfeld);
    EXPECT_EQ(pi.tensor, Mat(fc.dim(), fc.dim()));
    Bivector pih = bivector_at(*fc.md, e, Variant::Heisenberg);
    EXPECT_EQ(pih.tensor, 2 * fc.md->r_tensor);
    EXPECT_EQ(pih.tensor, fc.md->r.coeff);
  }
}

TEST(DoublePoisson, GxtSl2AtSValues) {
  FlagCase fc = standard_triple_gxt(2);
  GroupPoint d(fc.rep, {sdot(), Mat::identity(2)});
  Mat A = adjoint_matrix(d);
  for (Variant v : {Variant::Drinfeld, Variant::Heisenberg})
    for (const Vec& y : {V({1, 0, 0, 0}), V({0, 0, 1, 0})}) {
      auto [first, second] = sharp_oracle(fc.md->triple, A, y, v);
      ASSERT_EQ(first, second);
      EXPECT_EQ(qv(double_sharp(*fc.md, d, y, v)), first);
    }
  // Frozen from the oracle above.
  EXPECT_EQ(drinfeld_sharp(*fc.md, d, V({1, 0, 0, 0})), V({1, 0, 0, 0}));
  EXPECT_EQ(drinfeld_sharp(*fc.md, d, V({0, 0, 1, 0})), V({0, 0, -1, 0}));
  EXPECT_EQ(heisenberg_sharp(*fc.md, d, V({1, 0, 0, 0})), V({0, 0, 0, 0}));
  EXPECT_EQ(heisenberg_sharp(*fc.md, d, V({0, 0, 1, 0})), V({0, 0, 0, 0}));
}

TEST(DoublePoisson, ProjectorMatchesOracle) {
  for (const auto& fc : cases()) EXPECT_EQ(testutil::to_q(fc.md->pplus), projector_oracle(fc.md->triple));
}

TEST(DoublePoisson, TwoExpressionsAgreeOnRandomPairs) {
  for (const auto& fc : cases()) {
    Rng rng = derive_rng(testutil::kSeed, 10, fc.dim());
    for (int iter = 0; iter < 100; ++iter) {
      GroupPoint d = random_point(rng, fc);
      Vec y = testutil::random_vec(rng, fc.dim());
      Mat A = adjoint_matrix(d);
      for (Variant v : {Variant::Drinfeld, Variant::Heisenberg}) {
        auto [first, second] = sharp_oracle(fc.md->triple, A, y, v);
        EXPECT_EQ(first, second);
        EXPECT_EQ(qv(double_sharp(*fc.md, d, y, v)), first);
      }
    }
  }
}

TEST(DoublePoisson, SharpMatchesTensor) {
  for (const auto& fc : cases()) {
    Rng rng = derive_rng(testutil::kSeed, 11, fc.dim());
    for (int iter = 0; iter < 5; ++iter) {
      GroupPoint d = random_point(rng, fc);
      for (Variant v : {Variant::Drinfeld, Variant::Heisenberg}) {
        Bivector b = bivector_at(*fc.md, d, v);
        EXPECT_TRUE(b.tensor.is_antisymmetric());
        EXPECT_EQ(*b.sharp, sharp_from_tensor(b.tensor, fc.md->form()));
        Vec y = testutil::random_vec(rng, fc.dim());
        EXPECT_EQ(*b.sharp * y, double_sharp(*fc.md, d, y, v));
      }
    }
  }
}

// H is T x T for GxT and the diagonal torus for GxG.
TEST(DoublePoisson, DrinfeldVanishesOnH) {
  for (const auto& fc : cases()) {
    Rng rng = derive_rng(testutil::kSeed, 12, fc.dim());
    for (int iter = 0; iter < 10; ++iter) {
      Mat t1 = random_torus(rng, fc.n), t2 = random_torus(rng, fc.n);
      GroupPoint t(fc.rep, {t1, fc.kind == CaseKind::GxT ? t2 : t1});
      EXPECT_EQ(image(adjoint_matrix(t), fc.md->triple.gplus), fc.md->triple.gplus);
      EXPECT_EQ(bivector_at(*fc.md, t, Variant::Drinfeld).tensor, Mat(fc.dim(), fc.dim()));
    }
  }
}

TEST(DoublePoisson, GxgOffDiagonalTorusIsNotInH) {
  FlagCase fc = standard_triple_gxg(2);
  GroupPoint t(fc.rep, {M({{2, 0}, {0, Rat(1, 2)}}), Mat::identity(2)});
  EXPECT_NE(bivector_at(*fc.md, t, Variant::Drinfeld).tensor, Mat(6, 6));
}

TEST(DoublePoisson, HeisenbergDoesNotVanishOnTorus) {
  FlagCase fc = standard_triple_gxt(2);
  GroupPoint t(fc.rep, {M({{2, 0}, {0, Rat(1, 2)}}), Mat::identity(2)});
  EXPECT_NE(bivector_at(*fc.md, t, Variant::Heisenberg).tensor, Mat(4, 4));
}

TEST(DoublePoisson, ChiCoherence) {
  for (const auto& fc : cases()) {
    Rng rng = derive_rng(testutil::kSeed, 13, fc.dim());
    for (int iter = 0; iter < 20; ++iter) {
      GroupPoint d = random_point(rng, fc);
      Bivector chi = chi_r_at(*fc.md, d, fc.md->nplus);
      QuotientFrame f = quotient_frame(d, fc.md->nplus);
      for (Variant v : {Variant::Drinfeld, Variant::Heisenberg})
        EXPECT_EQ(pushforward_bivector(f, bivector_at(*fc.md, d, v)).tensor, chi.tensor);
      // Independent: project r through the frame by hand.
      Mat expect(f.dim(), f.dim());
      for (std::size_t a = 0; a < fc.dim(); ++a)
        for (std::size_t b = 0; b < fc.dim(); ++b) {
          if (fc.md->r_tensor(a, b) == 0) continue;
          Vec pa = f.project(unit_vec(fc.dim(), a)), pb = f.project(unit_vec(fc.dim(), b));
          for (std::size_t i = 0; i < f.dim(); ++i)
            for (std::size_t j = 0; j < f.dim(); ++j) expect(i, j) += fc.md->r_tensor(a, b) * pa[i] * pb[j];
        }
      EXPECT_EQ(chi.tensor, expect);
    }
  }
}

TEST(DoublePoisson, ChiNeedsGplus) {
  FlagCase fc = standard_triple_gxt(2);
  EXPECT_THROW(chi_r_at(*fc.md, GroupPoint::identity(fc.rep), fc.md->h), std::invalid_argument);
}

TEST(DoublePoisson, MismatchedGroupRejected) {
  FlagCase a = standard_triple_gxt(2), b = standard_triple_gxg(2);
  EXPECT_THROW(bivector_at(*a.md, GroupPoint::identity(b.rep), Variant::Drinfeld), std::invalid_argument);
}
