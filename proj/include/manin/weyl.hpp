#pragma once

// The symmetric group S_n as the Weyl group of SL_n. Permutations are stored in
// one-line notation, 0-based: w[j] is the image of j. Simple reflection s_i
// (1-based, 1 <= i < n) swaps i-1 and i.

#include "manin/matrix.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <vector>

namespace manin {

using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

inline Perm simple_reflection(int n, int i) {
  if (i < 1 || i >= n) throw std::invalid_argument("simple reflection index out of range");
  Perm p = perm_identity(n);
  std::swap(p[i - 1], p[i]);
  return p;
}

/// (a b)(j) = a(b(j)).
inline Perm compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) out[j] = a[b[j]];
  return out;
}

inline Perm perm_inverse(const Perm& a) {
  Perm out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[a[j]] = static_cast<int>(j);
  return out;
}

inline bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

/// Coxeter length = number of inversions.
inline int perm_length(const Perm& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j] ? 1 : 0;
  return inv;
}

inline int perm_sign(const Perm& p) { return perm_length(p) % 2 == 0 ? 1 : -1; }

/// s_i is a right descent of w iff w(i-1) > w(i).
inline bool has_right_descent(const Perm& w, int i) { return w[i - 1] > w[i]; }

/// A reduced word (1-based simple reflection indices) with w = s_{i1} ... s_{ik}.
inline std::vector<int> reduced_word(Perm w) {
  std::vector<int> rev;
  const int n = static_cast<int>(w.size());
  for (;;) {
    int i = 1;
    while (i < n && !has_right_descent(w, i)) ++i;
    if (i == n) break;
    rev.push_back(i);
    std::swap(w[i - 1], w[i]);  // w <- w s_i
  }
  return {rev.rbegin(), rev.rend()};
}

inline Perm perm_from_word(int n, const std::vector<int>& word) {
  Perm p = perm_identity(n);
  for (int i : word) p = compose(p, simple_reflection(n, i));
  return p;
}

inline std::string word_label(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string s;
  for (int i : word) s += "s" + std::to_string(i);
  return s;
}

inline std::string perm_label(const Perm& p) { return word_label(reduced_word(p)); }

/// 1-based one-line notation such as "132".
inline std::string perm_one_line(const Perm& p) {
  std::string s;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j) s += p.size() > 9 ? "," : "";
    s += std::to_string(p[j] + 1);
  }
  return s;
}

/// All permutations of {0..n-1} in lexicographic order.
inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = perm_identity(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Signed permutation matrix with determinant 1: entry (w(j), j) is 1, except
/// that for odd w the first moved column carries -1.
inline Mat weyl_representative(const Perm& w) {
  const std::size_t n = w.size();
  Mat m(n, n);
  for (std::size_t j = 0; j < n; ++j) m(w[j], j) = 1;
  if (perm_sign(w) < 0)
    for (std::size_t j = 0; j < n; ++j)
      if (w[j] != static_cast<int>(j)) {
        m(w[j], j) = -1;
        break;
      }
  return m;
}

/// Minimal length coset representatives W^I for W / W_I, found by
/// breadth-first search on the left weak order from the identity. W^I is
/// exactly the set of w with no right descent in I, and it is closed under
/// taking left weak-order predecessors, so the search never leaves it.
inline std::vector<Perm> minimal_coset_reps(int n, const std::set<int>& I) {
  for (int i : I)
    if (i < 1 || i >= n) throw std::invalid_argument("simple root index out of range");
  auto in_WI = [&](const Perm& w) {
    for (int i : I)
      if (has_right_descent(w, i)) return false;
    return true;
  };
  std::vector<Perm> out;
  std::set<Perm> seen;
  std::deque<Perm> queue{perm_identity(n)};
  seen.insert(queue.front());
  while (!queue.empty()) {
    Perm w = queue.front();
    queue.pop_front();
    out.push_back(w);
    for (int i = 1; i < n; ++i) {
      Perm sw = compose(simple_reflection(n, i), w);
      if (perm_length(sw) != perm_length(w) + 1 || seen.count(sw) || !in_WI(sw)) continue;
      seen.insert(sw);
      queue.push_back(std::move(sw));
    }
  }
  return out;
}

}  // namespace manin
