#pragma once

#include <vector>

#include "sts/linalg.hpp"

namespace sts {

/// Finite-dimensional Lie algebra given by antisymmetric structure constants
/// over a fixed basis; brackets are stored sparse for the pairs i < j only.
struct LieAlgebra {
  int dim = 0;
  std::vector<SparseVec> bracket;  // index pair_id(i,j), i < j
  std::vector<int> grading;        // optional per-basis tags (empty if none)

  explicit LieAlgebra(int d = 0)
      : dim(d), bracket((size_t)((long long)d * (d - 1) / 2)) {}

  long long pair_id(int i, int j) const {  // requires i < j
    return (long long)i * dim - (long long)i * (i + 1) / 2 + (j - i - 1);
  }

  void set_bracket(int i, int j, SparseVec v) {  // i < j
    bracket[(size_t)pair_id(i, j)] = std::move(v);
  }

  /// [e_i, e_j] with the antisymmetry applied for i >= j.
  SparseVec bracket_of(int i, int j) const {
    if (i == j) return {};
    if (i < j) return bracket[(size_t)pair_id(i, j)];
    SparseVec v = bracket[(size_t)pair_id(j, i)];
    v.scale(Rational(-1));
    return v;
  }

  /// [e_i, x] for a sparse x.
  SparseVec ad(int i, const SparseVec& x) const {
    SparseVec acc;
    for (const auto& [j, c] : x.nz) {
      if ((int)j == i) continue;
      SparseVec b = bracket_of(i, (int)j);
      acc.axpy(c, b);
    }
    return acc;
  }
};

}  // namespace sts
