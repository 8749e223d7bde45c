#pragma once

// Weak sections and weak splittings of D/H -> D/N+ for Drinfeld and
// Heisenberg doubles, checked pointwise in right-trivialized frames.
//
// Notation: n_s is n- for the Drinfeld double and n+ for the Heisenberg
// double; p_s is p+ resp. p-. For a representative d and a subalgebra q,
// g_d = n_s ∩ Ad_d(q) is the Lie algebra of G_d = N_s ∩ d Q d^-1, and the
// tangent of G_d d at gd is g_d in the right-trivialized frame. The bundle
// over G_d d has fiber p_s Ad_d(q^perp) + Ad_{gd}(n+).
//
// Ambient-space sums in the sufficient conditions are taken in d.

#include "manin/poisson.hpp"
#include "manin/sampling.hpp"

#include <future>
#include <memory>
#include <sstream>

namespace manin {

struct GroupData {
  std::vector<Vec> nilpotent;     // elements of g_d with nilpotent images
  std::vector<GroupPoint> toral;  // semisimple elements of G_d
};

struct SectionSpec {
  std::shared_ptr<const ManinData> md;
  GroupPoint d;
  Subspace q;
  Variant variant = Variant::Drinfeld;
  std::optional<GroupData> group_data;  // derived from g_d when absent
};

/// Data that is constant along the orbit G_d d.
struct SectionGeometry {
  Mat A, Ai;              // Ad_d and its inverse
  Subspace ns;            // n_s
  Subspace qperp;
  Subspace gd;            // n_s ∩ Ad_d(q)
  Subspace fiber_const;   // p_s Ad_d(q^perp)
  const Mat* ps = nullptr;
};

inline SectionGeometry section_geometry(const SectionSpec& s) {
  const ManinData& md = *s.md;
  if (s.q.ambient_dim() != md.dim()) throw std::invalid_argument("q lives in the wrong ambient space");
  SectionGeometry g;
  g.A = adjoint_matrix(s.d);
  g.Ai = inverse_or_throw(g.A, "Ad_d");
  const bool drinfeld = s.variant == Variant::Drinfeld;
  g.ns = drinfeld ? md.nminus : md.nplus;
  g.ps = drinfeld ? &md.pplus : &md.pminus;
  g.qperp = orth_complement(s.q, md.form());
  g.gd = subspace_intersect(g.ns, image(g.A, s.q));
  g.fiber_const = image(*g.ps, image(g.A, g.qperp));
  return g;
}

namespace detail {

inline std::string dims_of(std::initializer_list<std::pair<const char*, std::size_t>> xs) {
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : xs) {
    os << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  return os.str();
}

inline bool is_nilpotent(const Mat& x) {
  Mat p = x;
  for (std::size_t k = 1; k < x.rows(); ++k) p = p * x;
  return p.is_zero();
}

}  // namespace detail

/// Nilpotent generators taken from the canonical basis of g_d.
inline GroupData derive_group_data(const SectionSpec& s, const SectionGeometry& g) {
  GroupData gd;
  for (const auto& v : g.gd.vectors())
    if (detail::is_nilpotent(s.d.rep()->image(v))) gd.nilpotent.push_back(v);
  return gd;
}

inline const char* ns_name(Variant v) { return v == Variant::Drinfeld ? "n-" : "n+"; }

/// Lie-level sufficient conditions for the orbit G_d dH to carry a weak
/// section. Clauses a through e, plus well-formedness of q and of the
/// declared group data.
inline CheckReport check_section_conditions(const SectionSpec& s, const SectionGeometry& g) {
  const ManinData& md = *s.md;
  const LieAlg& L = md.amb().alg;
  const std::size_t n = md.dim();
  const std::string ns = ns_name(s.variant);
  CheckReport rep;

  std::string w = subalgebra_witness(L, s.q);
  rep.add("q-subalgebra", w.empty(), w);

  Subspace adh = image(g.A, md.h);
  rep.add("a:Ad_d(h) in " + ns, g.ns.contains(adh),
          "dim Ad_d(h) ∩ " + ns + " = " + std::to_string(subspace_intersect(adh, g.ns).dim()) +
              " < dim h = " + std::to_string(md.h.dim()));

  Subspace cap_nplus = subspace_intersect(g.ns, image(g.A, md.nplus));
  Subspace decomposition = subspace_sum(cap_nplus, g.gd);
  rep.add("b:decomposition of " + ns, decomposition == g.ns,
          detail::dims_of({{"dim(sum)", decomposition.dim()}, {"dim n_s", g.ns.dim()}}));

  Subspace q_cap = subspace_intersect(s.q, md.nplus);
  rep.add("c:q ∩ n+ = h", q_cap == md.h,
          detail::dims_of({{"dim(q∩n+)", q_cap.dim()}, {"dim h", md.h.dim()},
                           {"h⊆q∩n+", static_cast<std::size_t>(q_cap.contains(md.h))}}));

  Subspace s1 = subspace_sum(md.nplus, s.q);
  rep.add("d1:n+ + q = d (g read as d)", s1.is_full(), "dim = " + std::to_string(s1.dim()));
  Subspace s2 = subspace_sum(subspace_sum(md.nplus, g.qperp), image(g.Ai, g.ns));
  rep.add("d2:n+ + q^perp + Ad_d^-1(" + ns + ") = d (g read as d)", s2.is_full(),
          "dim = " + std::to_string(s2.dim()));

  const std::size_t lhs = g.fiber_const.dim() + md.nplus.dim() + g.gd.dim();
  rep.add("e:dims (g read as d)", lhs == n + md.h.dim(),
          detail::dims_of({{"dim p_s Ad_d(q^perp)", g.fiber_const.dim()},
                           {"dim n+", md.nplus.dim()},
                           {"dim g_d", g.gd.dim()},
                           {"dim d + dim h", n + md.h.dim()}}));

  // Declared group data: nilpotent generators must lie in g_d; toral
  // generators are checked through necessary conditions (they normalize n_s
  // and, conjugated back by d, normalize q).
  w.clear();
  if (s.group_data) {
    for (std::size_t i = 0; i < s.group_data->nilpotent.size() && w.empty(); ++i) {
      const Vec& x = s.group_data->nilpotent[i];
      if (!g.gd.contains(x)) w = "nilpotent generator " + std::to_string(i) + " not in g_d";
      else if (!detail::is_nilpotent(s.d.rep()->image(x)))
        w = "generator " + std::to_string(i) + " is not nilpotent";
    }
    for (std::size_t i = 0; i < s.group_data->toral.size() && w.empty(); ++i) {
      const GroupPoint& t = s.group_data->toral[i];
      Mat At = adjoint_matrix(t);
      Mat Aback = g.Ai * At * g.A;
      if (image(At, g.ns) != g.ns || image(Aback, s.q) != s.q)
        w = "toral generator " + std::to_string(i) + " fails the normalizing conditions";
    }
  }
  rep.add("group-data", w.empty(), w);
  return rep;
}

inline CheckReport check_section_conditions(const SectionSpec& s) {
  return check_section_conditions(s, section_geometry(s));
}

/// Random element of G_d: exp(sum c_i X_i) times a word in the toral generators.
inline GroupPoint sample_gd(const SectionSpec& s, const GroupData& gd, Rng& rng) {
  const auto& rep = s.d.rep();
  Vec x = zero_vec(rep->dim());
  for (const auto& v : gd.nilpotent) {
    Rat c = random_int(rng, -2, 2) / Rat(std::uniform_int_distribution<int>(1, 2)(rng));
    if (c != 0) x = x + c * v;
  }
  GroupPoint g = exp_nilpotent(rep, x);
  std::uniform_int_distribution<int> power(-1, 2);
  for (const auto& t : gd.toral) {
    int k = power(rng);
    GroupPoint tk = k < 0 ? t.inverse() : GroupPoint::identity(rep);
    for (int i = 0; i < k; ++i) tk = tk * t;
    g = g * tk;
  }
  return g;
}

/// Section data at p = g d, right-trivialized at p.
struct FiberData {
  GroupPoint point;
  Mat Ap;                 // Ad_p
  Subspace tangent;       // g_d
  Subspace fiber;         // p_s Ad_d(q^perp) + Ad_p(n+)
  Subspace h_at_point;    // Ad_p(h)
  bool econd_cap = false; // fiber ∩ tangent = Ad_p(h)
  bool econd_sum = false; // fiber + tangent = d
};

inline FiberData section_fiber(const SectionSpec& s, const SectionGeometry& g, const GroupPoint& gpt) {
  const ManinData& md = *s.md;
  FiberData f;
  f.point = gpt * s.d;
  f.Ap = adjoint_matrix(f.point);
  f.tangent = g.gd;
  f.fiber = subspace_sum(g.fiber_const, image(f.Ap, md.nplus));
  f.h_at_point = image(f.Ap, md.h);
  f.econd_cap = subspace_intersect(f.fiber, f.tangent) == f.h_at_point;
  f.econd_sum = subspace_sum(f.fiber, f.tangent).is_full();
  return f;
}

/// The bundle fiber at g d. Throws std::runtime_error when the fiber does not
/// meet the orbit tangent exactly in Ad_{gd}(h) or does not span d with it.
inline Subspace section_bundle_fiber(const SectionSpec& s, const GroupPoint& g) {
  auto geom = section_geometry(s);
  auto f = section_fiber(s, geom, g);
  if (!f.econd_cap || !f.econd_sum)
    throw std::runtime_error(std::string("bundle fiber fails the ") +
                             (!f.econd_cap ? "intersection" : "spanning") +
                             " condition at the requested point");
  return f.fiber;
}

/// Pointwise Poisson-Dirac criterion in the coordinates of the bivector's
/// frame. Clauses: direct-sum, mixed-block (the tangent∧complement part of the
/// tensor vanishes), sharp-annihilator (sharp of covectors vanishing on the
/// tangent lands in the complement). The last two are equivalent under the
/// first; a disagreement throws std::logic_error.
inline CheckReport poisson_dirac_check(const Bivector& biv, const Subspace& tangent,
                                       const Subspace& complement) {
  const std::size_t k = biv.dim();
  if (tangent.ambient_dim() != k || complement.ambient_dim() != k)
    throw std::invalid_argument("tangent and complement must live in the bivector's frame");
  CheckReport rep;
  const bool direct = tangent.dim() + complement.dim() == k &&
                      subspace_intersect(tangent, complement).is_zero();
  rep.add("pd:direct-sum", direct,
          detail::dims_of({{"dim X", tangent.dim()}, {"dim E", complement.dim()}, {"frame", k}}));
  if (!direct) return rep;

  // Columns of `bas` are the tangent basis followed by the complement basis.
  std::vector<Vec> cols = tangent.vectors();
  for (auto& v : complement.vectors()) cols.push_back(std::move(v));
  Mat bas = Mat::from_columns(cols, k);
  Mat bas_inv = inverse_or_throw(bas, "adapted basis");
  Mat adapted = bas_inv * biv.tensor * bas_inv.transpose();
  const std::size_t t = tangent.dim();
  std::string w;
  for (std::size_t i = 0; i < t && w.empty(); ++i)
    for (std::size_t j = t; j < k && w.empty(); ++j)
      if (adapted(i, j) != 0)
        w = "mixed component (" + std::to_string(i) + "," + std::to_string(j) +
            ") = " + to_string(adapted(i, j));
  const bool mixed_ok = w.empty();
  rep.add("pd:mixed-block", mixed_ok, w);

  std::string w2;
  Mat annihilator_sys = tangent.basis();  // alpha with alpha(x) = 0 for x in X
  for (const auto& alpha : kernel(annihilator_sys)) {
    Vec sharp = biv.tensor.transpose() * alpha;
    if (!complement.contains(sharp)) {
      w2 = "sharp of an annihilator covector leaves E";
      break;
    }
  }
  const bool sharp_ok = w2.empty();
  rep.add("pd:sharp-annihilator", sharp_ok, w2);
  if (mixed_ok != sharp_ok)
    throw std::logic_error("mixed-block and sharp-annihilator criteria disagree");
  return rep;
}

/// At p = g d: the bundle conditions, the Poisson-Dirac criterion in the D/H
/// frame, the same criterion via the form in d, and the section law (the
/// tangent part of pi_H pushes forward to chi(r) on D/N+).
inline CheckReport weak_section_verify(const SectionSpec& s, const SectionGeometry& geom,
                                       const GroupPoint& g) {
  const ManinData& md = *s.md;
  CheckReport rep;
  FiberData f = section_fiber(s, geom, g);
  rep.add("sample-normalizes-g_d", image(adjoint_matrix(g), geom.gd) == geom.gd,
          "Ad_g(g_d) != g_d: the sample is not in G_d");
  rep.add("econd:fiber ∩ tangent = Ad_p(h)", f.econd_cap,
          detail::dims_of({{"dim(fiber∩tangent)", subspace_intersect(f.fiber, f.tangent).dim()},
                           {"dim h", md.h.dim()}}));
  rep.add("econd:fiber + tangent = d", f.econd_sum,
          "dim = " + std::to_string(subspace_sum(f.fiber, f.tangent).dim()));

  Bivector full = bivector_from_adjoint(md, f.point, f.Ap, s.variant);
  QuotientFrame fh = frame_for(f.point, f.h_at_point);
  Bivector pih = pushforward_bivector(fh, full);
  Subspace X = fh.image_of(f.tangent);
  Subspace E = fh.image_of(f.fiber);
  CheckReport pd = poisson_dirac_check(pih, X, E);
  rep.merge(pd);

  // Form route: covectors on D/H at p are form-duals of (Ad_p h)^perp; those
  // vanishing on the orbit tangent are (tangent + Ad_p h)^perp.
  Subspace ann = orth_complement(subspace_sum(f.tangent, f.h_at_point), md.form());
  Subspace sharp_img = image(*full.sharp, ann);
  rep.add("pd:sharp-annihilator-form", f.fiber.contains(sharp_img),
          "sharp((tangent + Ad_p h)^perp) not inside the fiber");

  if (!pd.passed()) {
    rep.add("section-law", false, "skipped: no Dirac projection at this point");
    return rep;
  }
  // Keep only the tangent block of pi_H, map it back to frame coordinates and
  // push it to D/N+.
  std::vector<Vec> cols = X.vectors();
  for (auto& v : E.vectors()) cols.push_back(std::move(v));
  Mat bas = Mat::from_columns(cols, fh.dim());
  Mat bas_inv = inverse_or_throw(bas, "adapted basis");
  Mat adapted = bas_inv * pih.tensor * bas_inv.transpose();
  for (std::size_t i = 0; i < adapted.rows(); ++i)
    for (std::size_t j = 0; j < adapted.cols(); ++j)
      if (i >= X.dim() || j >= X.dim()) adapted(i, j) = 0;
  Bivector tangent_part{f.point, fh, bas * adapted * bas.transpose(), std::nullopt};
  Bivector chi = chi_r_at(md, f.point, md.nplus);
  Bivector pushed = pushforward_bivector(*chi.frame, tangent_part);
  rep.add("section-law", pushed.tensor == chi.tensor,
          "projected pi_H does not push forward to chi(r)");
  return rep;
}

inline CheckReport weak_section_verify(const SectionSpec& s, const GroupPoint& g) {
  return weak_section_verify(s, section_geometry(s), g);
}

struct SplittingOptions {
  std::uint64_t seed = 1;
  std::size_t coverage_samples = 100;
  std::size_t section_samples = 5;  // per representative; 0 skips pointwise checks
  bool parallel = false;
};

struct Representative {
  std::string label;
  GroupPoint d;
  std::optional<GroupData> group_data;
};

namespace detail {

/// Runs f(i) for i in [0, n), concurrently when asked, and returns the
/// results in index order.
template <class F>
auto ordered_map(std::size_t n, bool parallel, F f) -> std::vector<decltype(f(std::size_t{}))> {
  std::vector<decltype(f(std::size_t{}))> out;
  out.reserve(n);
  if (!parallel) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
    return out;
  }
  std::vector<std::future<decltype(f(std::size_t{}))>> futs;
  for (std::size_t i = 0; i < n; ++i) futs.push_back(std::async(std::launch::async, f, i));
  for (auto& fu : futs) out.push_back(fu.get());
  return out;
}

}  // namespace detail

/// Conditions and pointwise section checks for one representative.
inline CheckReport verify_representative(const std::shared_ptr<const ManinData>& md, const Subspace& q,
                                         const Representative& r, Variant variant,
                                         const SplittingOptions& opt, std::size_t index) {
  SectionSpec s{md, r.d, q, variant, r.group_data};
  SectionGeometry geom = section_geometry(s);
  CheckReport rep = check_section_conditions(s, geom);
  if (variant == Variant::Heisenberg)
    rep.add("normalizes-h", image(geom.A, md->h) == md->h, "Ad_d(h) != h");
  GroupData gd = s.group_data ? *s.group_data : derive_group_data(s, geom);
  for (std::size_t k = 0; k < opt.section_samples; ++k) {
    Rng rng = derive_rng(opt.seed, index, k);
    GroupPoint g = k == 0 ? GroupPoint::identity(r.d.rep()) : sample_gd(s, gd, rng);
    rep.merge(weak_section_verify(s, geom, g), "sample[" + std::to_string(k) + "]:");
  }
  return rep;
}

/// Every sampled point of D must fall in the cell of exactly one representative.
inline CheckReport check_coverage(const std::vector<Representative>& reps, const CellSpec& cells,
                                  const SplittingOptions& opt) {
  CheckReport rep;
  std::vector<std::vector<Perm>> rep_cells;
  for (const auto& r : reps) rep_cells.push_back(bruhat_decompose(r.d, cells).cell);
  std::string w;
  Rng rng = derive_rng(opt.seed, 0xC0FFEE);
  for (std::size_t k = 0; k < opt.coverage_samples && w.empty(); ++k) {
    GroupPoint x = random_point_for_cells(rng, reps.front().d.rep(), cells, k % 2 == 1);
    auto cell = bruhat_decompose(x, cells).cell;
    std::size_t hits = 0;
    for (const auto& rc : rep_cells) hits += rc == cell ? 1 : 0;
    if (hits != 1) {
      std::string label;
      for (const auto& p : cell) label += (label.empty() ? "" : ",") + perm_label(p);
      w = "sample " + std::to_string(k) + " in cell (" + label + ") matches " +
          std::to_string(hits) + " representatives";
    }
  }
  rep.add("coverage", w.empty(), w);
  return rep;
}

/// Weak-splitting verification over a set of representatives: per-representative
/// conditions (and, for the Heisenberg double, Ad_d(h) = h), pointwise section
/// checks at sampled points, and cell coverage of D.
inline CheckReport check_weak_splitting(const std::shared_ptr<const ManinData>& md, const Subspace& q,
                                        const std::vector<Representative>& reps, Variant variant,
                                        const CellSpec& cells, const SplittingOptions& opt) {
  if (reps.empty()) throw std::invalid_argument("weak splitting needs at least one representative");
  auto parts = detail::ordered_map(reps.size(), opt.parallel, [&](std::size_t i) {
    return verify_representative(md, q, reps[i], variant, opt, i);
  });
  CheckReport rep;
  for (std::size_t i = 0; i < reps.size(); ++i)
    rep.merge(parts[i], "rep[" + reps[i].label + "]:");
  rep.merge(check_coverage(reps, cells, opt));
  return rep;
}

}  // namespace manin
