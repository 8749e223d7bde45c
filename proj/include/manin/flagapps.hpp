#pragma once

// Built-in standard Manin triples for sl_n and the flag-variety suites:
//   GxT: d = sl_n ⊕ t, D = SL_n × T, g+ = {(x+ + h, h)}, g- = {(x- + h, -h)},
//        form <(x1,y1),(x2,y2)> = K(x1,x2) - K(y1,y2), q = b- ⊕ t.
//   GxG: d = sl_n ⊕ sl_n, D = SL_n × SL_n, g+ = {(x+ + h, x- - h)},
//        g- = diagonal, same form, q = Lie((U- × U+) T_Δ).

#include "manin/sl.hpp"
#include "manin/splitcheck.hpp"

#include <set>

namespace manin {

enum class CaseKind { GxT, GxG };

inline const char* to_string(CaseKind k) { return k == CaseKind::GxT ? "gxt" : "gxg"; }

inline CaseKind parse_case_kind(const std::string& s) {
  if (s == "gxt") return CaseKind::GxT;
  if (s == "gxg") return CaseKind::GxG;
  throw std::invalid_argument("unknown case '" + s + "' (expected gxt or gxg)");
}

struct WeylElement {
  std::string label;        // e.g. "s1s2" or "(s1,e)"
  std::vector<Perm> perms;  // one per SL factor
  GroupPoint dot;           // signed-permutation representative in D
};

struct FlagCase {
  CaseKind kind = CaseKind::GxT;
  std::size_t n = 0;
  SlBasis sl;
  std::shared_ptr<const MatRep> rep;
  std::shared_ptr<const ManinData> md;
  Subspace q_alg;
  Subspace h_alg;
  std::vector<std::size_t> root_vector_indices;  // basis indices of root vectors in d

  std::size_t sl_dim() const { return sl.mats.size(); }
  std::size_t dim() const { return md->dim(); }
};

/// Requested built-in suite that the theory does not cover.
class unsupported_case : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Mat sl_killing(std::size_t n) { return killing_form(sl_algebra(n)); }

inline Vec unit_sum(std::size_t dim, std::size_t a, std::size_t b, int sign) {
  Vec v = unit_vec(dim, a);
  v[b] += sign;
  return v;
}

}  // namespace detail

inline FlagCase standard_triple_gxt(std::size_t n) {
  if (n < 2) throw std::invalid_argument("standard_triple_gxt needs n >= 2");
  FlagCase fc;
  fc.kind = CaseKind::GxT;
  fc.n = n;
  fc.sl = sl_basis(n);
  const std::size_t m = fc.sl.mats.size(), r = fc.sl.cartan.size(), dim = m + r;
  const Mat zero(n, n);
  std::vector<std::vector<Mat>> blocks;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    blocks.push_back({fc.sl.mats[i], zero});
    labels.push_back("(" + fc.sl.labels[i] + ",0)");
  }
  for (std::size_t a = 0; a < r; ++a) {
    blocks.push_back({zero, fc.sl.mats[fc.sl.cartan[a]]});
    labels.push_back("(0," + fc.sl.labels[fc.sl.cartan[a]] + ")");
  }
  auto rep = std::make_shared<const MatRep>(MatRep::from_blocks({n, n}, blocks));
  LieAlg alg = lie_from_matrices(rep->images(), labels);
  Mat K = detail::sl_killing(n);
  Mat B(dim, dim);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) B(i, j) = K(i, j);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) B(m + a, m + b) = -K(fc.sl.cartan[a], fc.sl.cartan[b]);

  std::vector<Vec> gp, gm, q;
  for (auto i : fc.sl.upper) gp.push_back(unit_vec(dim, i));
  for (auto i : fc.sl.lower) gm.push_back(unit_vec(dim, i));
  for (std::size_t a = 0; a < r; ++a) {
    gp.push_back(detail::unit_sum(dim, fc.sl.cartan[a], m + a, 1));
    gm.push_back(detail::unit_sum(dim, fc.sl.cartan[a], m + a, -1));
  }
  for (auto i : fc.sl.cartan) q.push_back(unit_vec(dim, i));
  for (auto i : fc.sl.lower) q.push_back(unit_vec(dim, i));
  for (std::size_t a = 0; a < r; ++a) q.push_back(unit_vec(dim, m + a));

  ManinTriple t{QuadLie{std::move(alg), std::move(B)}, Subspace::span(gp, dim), Subspace::span(gm, dim)};
  fc.rep = rep;
  fc.md = std::make_shared<const ManinData>(std::move(t));
  fc.q_alg = Subspace::span(q, dim);
  fc.h_alg = fc.md->h;
  for (auto i : fc.sl.upper) fc.root_vector_indices.push_back(i);
  for (auto i : fc.sl.lower) fc.root_vector_indices.push_back(i);
  return fc;
}

inline FlagCase standard_triple_gxg(std::size_t n) {
  if (n < 2) throw std::invalid_argument("standard_triple_gxg needs n >= 2");
  FlagCase fc;
  fc.kind = CaseKind::GxG;
  fc.n = n;
  fc.sl = sl_basis(n);
  const std::size_t m = fc.sl.mats.size(), dim = 2 * m;
  const Mat zero(n, n);
  std::vector<std::vector<Mat>> blocks;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    blocks.push_back({fc.sl.mats[i], zero});
    labels.push_back("(" + fc.sl.labels[i] + ",0)");
  }
  for (std::size_t i = 0; i < m; ++i) {
    blocks.push_back({zero, fc.sl.mats[i]});
    labels.push_back("(0," + fc.sl.labels[i] + ")");
  }
  auto rep = std::make_shared<const MatRep>(MatRep::from_blocks({n, n}, blocks));
  LieAlg alg = lie_from_matrices(rep->images(), labels);
  Mat K = detail::sl_killing(n);
  Mat B(dim, dim);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      B(i, j) = K(i, j);
      B(m + i, m + j) = -K(i, j);
    }

  std::vector<Vec> gp, gm, q;
  for (auto i : fc.sl.upper) gp.push_back(unit_vec(dim, i));
  for (auto i : fc.sl.lower) gp.push_back(unit_vec(dim, m + i));
  for (auto c : fc.sl.cartan) gp.push_back(detail::unit_sum(dim, c, m + c, -1));
  for (std::size_t i = 0; i < m; ++i) gm.push_back(detail::unit_sum(dim, i, m + i, 1));
  for (auto i : fc.sl.lower) q.push_back(unit_vec(dim, i));
  for (auto i : fc.sl.upper) q.push_back(unit_vec(dim, m + i));
  for (auto c : fc.sl.cartan) q.push_back(detail::unit_sum(dim, c, m + c, 1));

  ManinTriple t{QuadLie{std::move(alg), std::move(B)}, Subspace::span(gp, dim), Subspace::span(gm, dim)};
  fc.rep = rep;
  fc.md = std::make_shared<const ManinData>(std::move(t));
  fc.q_alg = Subspace::span(q, dim);
  fc.h_alg = fc.md->h;
  for (std::size_t blk = 0; blk < 2; ++blk) {
    for (auto i : fc.sl.upper) fc.root_vector_indices.push_back(blk * m + i);
    for (auto i : fc.sl.lower) fc.root_vector_indices.push_back(blk * m + i);
  }
  return fc;
}

inline FlagCase standard_case(CaseKind k, std::size_t n) {
  return k == CaseKind::GxT ? standard_triple_gxt(n) : standard_triple_gxg(n);
}

/// W (GxT) or W × W (GxG) with signed-permutation representatives, in
/// lexicographic order of one-line notation.
inline std::vector<WeylElement> weyl_data(const FlagCase& fc) {
  std::vector<WeylElement> out;
  const auto perms = all_perms(static_cast<int>(fc.n));
  const Mat id = Mat::identity(fc.n);
  if (fc.kind == CaseKind::GxT) {
    for (const auto& w : perms)
      out.push_back({perm_label(w), {w}, GroupPoint(fc.rep, {weyl_representative(w), id})});
  } else {
    for (const auto& w : perms)
      for (const auto& v : perms)
        out.push_back({"(" + perm_label(w) + "," + perm_label(v) + ")",
                       {w, v},
                       GroupPoint(fc.rep, {weyl_representative(w), weyl_representative(v)})});
  }
  return out;
}

inline CellSpec cell_spec(const FlagCase& fc, Variant v) {
  if (fc.kind == CaseKind::GxT) {
    if (v == Variant::Drinfeld) return {std::pair{Borel::Minus, Borel::Plus}, std::nullopt};
    return {std::pair{Borel::Plus, Borel::Plus}, std::nullopt};
  }
  if (v == Variant::Drinfeld)
    throw unsupported_case(
        "the Drinfeld variant cannot be applied to the submersion "
        "((G x G)/T_Δ, pi_{T_Δ}) -> (G/B+ x G/B-, pi_df): use the Heisenberg variant");
  return {std::pair{Borel::Plus, Borel::Plus}, std::pair{Borel::Minus, Borel::Minus}};
}

/// diag(1, ..., 2, 1/2, ..., 1) with the 2 in position i (0-based): the simple
/// coroot i+1 evaluated at 2.
inline Mat coroot_at_two(std::size_t n, std::size_t i) {
  Mat m = Mat::identity(n);
  m(i, i) = 2;
  m(i + 1, i + 1) = Rat(1, 2);
  return m;
}

/// Generators of G_d for a built-in case: root vectors of g_d (a nilpotent
/// subalgebra) and d-conjugates of toral generators of H ∩ Q.
inline GroupData builtin_group_data(const FlagCase& fc, const GroupPoint& d, Variant v) {
  SectionSpec s{fc.md, d, fc.q_alg, v, std::nullopt};
  SectionGeometry geom = section_geometry(s);
  std::vector<Vec> roots;
  for (auto i : fc.root_vector_indices) roots.push_back(unit_vec(fc.dim(), i));
  Subspace nil = subspace_intersect(geom.gd, Subspace::span(roots, fc.dim()));
  GroupData gd;
  gd.nilpotent = nil.vectors();
  const Mat id = Mat::identity(fc.n);
  std::vector<GroupPoint> tor;
  for (std::size_t i = 0; i + 1 < fc.n; ++i) {
    Mat c = coroot_at_two(fc.n, i);
    if (fc.kind == CaseKind::GxT) {
      tor.emplace_back(fc.rep, std::vector<Mat>{c, id});
      tor.emplace_back(fc.rep, std::vector<Mat>{id, c});
    } else {
      tor.emplace_back(fc.rep, std::vector<Mat>{c, c});
    }
  }
  GroupPoint di = d.inverse();
  for (const auto& t : tor) gd.toral.push_back(d * t * di);
  return gd;
}

/// Dimension of the cell B_L w B_R / B_R per SL factor, summed.
inline std::size_t cell_dimension(const FlagCase& fc, const WeylElement& w, const CellSpec& cells) {
  const std::size_t N = fc.n * (fc.n - 1) / 2;
  std::size_t total = 0, k = 0;
  for (const auto& c : cells) {
    if (!c) continue;
    const std::size_t len = static_cast<std::size_t>(perm_length(w.perms.at(k++)));
    total += c->first == c->second ? len : N - len;
  }
  return total;
}

/// p- Ad_d(u- ⊕ u+ + t_aΔ) + Ad_p(b+ ⊕ b-) for the GxG case, with t_aΔ the
/// antidiagonal {(h, -h)} of t ⊕ t.
inline Subspace gxg_explicit_fiber(const FlagCase& fc, const Mat& Ad_d, const Mat& Ad_p) {
  if (fc.kind != CaseKind::GxG) throw std::invalid_argument("explicit fiber formula is for the GxG case");
  const std::size_t m = fc.sl_dim(), dim = fc.dim();
  std::vector<Vec> base;
  for (auto i : fc.sl.lower) base.push_back(unit_vec(dim, i));
  for (auto i : fc.sl.upper) base.push_back(unit_vec(dim, m + i));
  for (auto c : fc.sl.cartan) base.push_back(detail::unit_sum(dim, c, m + c, -1));
  Subspace first = image(fc.md->pminus, image(Ad_d, Subspace::span(base, dim)));
  return subspace_sum(first, image(Ad_p, fc.md->nplus));
}

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t samples_per_cell = 5;
  std::size_t coverage_samples = 100;
  bool parallel = false;
};

/// Weak-splitting reproduction over all Weyl representatives: sufficient
/// conditions, coverage, and at every sampled point the bundle, Poisson-Dirac
/// and section-law checks. Built-in extras: the orbit has the dimension of
/// its Schubert cell, sampled points land in the representative's cell, and
/// (GxG) the bundle fiber matches the explicit formula with t_aΔ.
inline CheckReport run_flag_suite(const FlagCase& fc, Variant v, const SuiteOptions& opt) {
  const CellSpec cells = cell_spec(fc, v);  // throws for drinfeld on GxG
  const auto weyl = weyl_data(fc);
  std::vector<Representative> reps;
  for (const auto& w : weyl) reps.push_back({w.label, w.dot, builtin_group_data(fc, w.dot, v)});
  SplittingOptions so{opt.seed, opt.coverage_samples, opt.samples_per_cell, opt.parallel};

  auto parts = detail::ordered_map(reps.size(), opt.parallel, [&](std::size_t i) {
    const auto& r = reps[i];
    CheckReport rep = verify_representative(fc.md, fc.q_alg, r, v, so, i);
    SectionSpec s{fc.md, r.d, fc.q_alg, v, r.group_data};
    SectionGeometry geom = section_geometry(s);
    Subspace stab = subspace_intersect(geom.gd, image(geom.A, fc.md->nplus));
    const std::size_t orbit = geom.gd.dim() - stab.dim();
    const std::size_t expect = cell_dimension(fc, weyl[i], cells);
    rep.add("orbit-dimension", orbit == expect,
            "dim orbit " + std::to_string(orbit) + " vs cell " + std::to_string(expect));
    const auto rep_cell = bruhat_decompose(r.d, cells).cell;
    for (std::size_t k = 0; k < opt.samples_per_cell; ++k) {
      Rng rng = derive_rng(opt.seed, i, k);
      GroupPoint g = k == 0 ? GroupPoint::identity(fc.rep) : sample_gd(s, *r.group_data, rng);
      GroupPoint p = g * r.d;
      const std::string pre = "sample[" + std::to_string(k) + "]:";
      rep.add(pre + "in-cell", bruhat_decompose(p, cells).cell == rep_cell,
              "sampled point left the representative's cell");
      if (fc.kind == CaseKind::GxG) {
        FiberData f = section_fiber(s, geom, g);
        rep.add(pre + "explicit-fiber-t_aΔ", gxg_explicit_fiber(fc, geom.A, f.Ap) == f.fiber,
                "fiber from q^perp differs from the t_aΔ formula");
      }
    }
    return rep;
  });
  CheckReport out;
  for (std::size_t i = 0; i < reps.size(); ++i) out.merge(parts[i], "rep[" + reps[i].label + "]:");
  out.merge(check_coverage(reps, cells, so));
  return out;
}

inline std::vector<Perm> minimal_coset_reps(std::size_t n, const std::set<int>& I) {
  return minimal_coset_reps(static_cast<int>(n), I);
}

}  // namespace manin
