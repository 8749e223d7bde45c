#pragma once

// The standard basis of sl_n: upper root vectors E_ij (i < j, lexicographic),
// then the simple coroots H_i = E_ii - E_{i+1,i+1}, then lower root vectors
// E_ij (i > j, lexicographic).

#include "manin/lie_algebra.hpp"

namespace manin {

struct SlBasis {
  std::size_t n = 0;
  std::vector<Mat> mats;
  std::vector<std::string> labels;
  std::vector<std::size_t> upper, cartan, lower;  // index ranges into mats
  std::vector<std::pair<std::size_t, std::size_t>> positions;  // (i, j) of root vectors; (i, i) for H_i
};

inline SlBasis sl_basis(std::size_t n) {
  if (n < 2) throw std::invalid_argument("sl_n needs n >= 2");
  SlBasis b;
  b.n = n;
  auto push = [&](Mat m, std::string label, std::pair<std::size_t, std::size_t> pos) {
    b.mats.push_back(std::move(m));
    b.labels.push_back(std::move(label));
    b.positions.push_back(pos);
    return b.mats.size() - 1;
  };
  auto unit = [n](std::size_t i, std::size_t j) {
    Mat m(n, n);
    m(i, j) = 1;
    return m;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      b.upper.push_back(push(unit(i, j), "E" + std::to_string(i + 1) + std::to_string(j + 1), {i, j}));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Mat h = unit(i, i);
    h(i + 1, i + 1) = -1;
    b.cartan.push_back(push(std::move(h), "H" + std::to_string(i + 1), {i, i}));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      b.lower.push_back(push(unit(i, j), "E" + std::to_string(i + 1) + std::to_string(j + 1), {i, j}));
  return b;
}

inline LieAlg sl_algebra(std::size_t n) {
  auto b = sl_basis(n);
  return lie_from_matrices(b.mats, b.labels);
}

}  // namespace manin
