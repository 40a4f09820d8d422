#pragma once

#include "sts/exterior.hpp"

namespace sts {

/// Clifford algebra of W + W* (dim W = 6) with the split quadratic form
/// q(u+f) = f(u), realized concretely as operators on the exterior algebra
/// of W: u acts by left multiplication l_u, f by the contraction
/// superderivation delta_f, so that l_u delta_f + delta_f l_u = f(u) id.
///
/// Operators are 64x64 matrices indexed by the subsets of {1..6}; the row
/// and column index of a basis form e_I is the bitmask of I.

constexpr int kCliffordGround = 6;
constexpr int kCliffordDim = 64;

/// Element of W + W*, as coordinates over (e_1..e_6, e^1..e^6).
template <class S>
struct WPlusDual {
  std::vector<S> w = std::vector<S>(6);
  std::vector<S> f = std::vector<S>(6);

  static WPlusDual basis_w(int i) {
    WPlusDual v;
    v.w[(size_t)i - 1] = S(1);
    return v;
  }
  static WPlusDual basis_f(int i) {
    WPlusDual v;
    v.f[(size_t)i - 1] = S(1);
    return v;
  }
};

/// Polar form q(x,y) = q(x+y) - q(x) - q(y) of the split quadratic form.
template <class S>
S q_polar(const WPlusDual<S>& x, const WPlusDual<S>& y) {
  S acc{};
  for (int i = 0; i < 6; ++i) {
    acc += x.f[(size_t)i] * y.w[(size_t)i];
    acc += y.f[(size_t)i] * x.w[(size_t)i];
  }
  return acc;
}

/// Natural action of sigma_{x,y}: z -> q(x,z) y - q(y,z) x on W + W*,
/// as a 12x12 matrix over the basis (e_1..e_6, e^1..e^6).
template <class S>
DenseMat<S> so_natural(const WPlusDual<S>& x, const WPlusDual<S>& y) {
  DenseMat<S> m(12, 12);
  auto coord = [](const WPlusDual<S>& v, int r) -> const S& {
    return r < 6 ? v.w[(size_t)r] : v.f[(size_t)r - 6];
  };
  for (int c = 0; c < 12; ++c) {
    WPlusDual<S> z;
    if (c < 6)
      z.w[(size_t)c] = S(1);
    else
      z.f[(size_t)c - 6] = S(1);
    S qxz = q_polar(x, z), qyz = q_polar(y, z);
    for (int r = 0; r < 12; ++r) {
      S v = qxz * coord(y, r) - qyz * coord(x, r);
      if (!v.is_zero()) m.at(r, c) = std::move(v);
    }
  }
  return m;
}

template <class S>
DenseMat<S> op_lmul(int i) {
  DenseMat<S> m(kCliffordDim, kCliffordDim);
  uint32_t b = 1u << (i - 1);
  for (uint32_t mask = 0; mask < kCliffordDim; ++mask) {
    if (mask & b) continue;
    int s = merge_sign(MultiIndex(b), MultiIndex(mask));
    m.at((int)(mask | b), (int)mask) = S(s);
  }
  return m;
}

template <class S>
DenseMat<S> op_contract(int i) {
  DenseMat<S> m(kCliffordDim, kCliffordDim);
  uint32_t b = 1u << (i - 1);
  for (uint32_t mask = 0; mask < kCliffordDim; ++mask) {
    if (!(mask & b)) continue;
    int below = count_below(MultiIndex(mask), i);
    m.at((int)(mask & ~b), (int)mask) = S((below & 1) ? -1 : 1);
  }
  return m;
}

/// Image of a generator of the Clifford algebra: l over the W part plus
/// contraction over the dual part.
template <class S>
DenseMat<S> clifford_generator(const WPlusDual<S>& v) {
  DenseMat<S> m(kCliffordDim, kCliffordDim);
  for (int i = 1; i <= 6; ++i) {
    if (!v.w[(size_t)i - 1].is_zero()) {
      DenseMat<S> l = op_lmul<S>(i).scaled(v.w[(size_t)i - 1]);
      m = m + l;
    }
    if (!v.f[(size_t)i - 1].is_zero()) {
      DenseMat<S> d = op_contract<S>(i).scaled(v.f[(size_t)i - 1]);
      m = m + d;
    }
  }
  return m;
}

/// sigma_{x,y} embedded in the even Clifford algebra: -1/2 (xy - yx) acting
/// on the exterior algebra.
template <class S>
DenseMat<S> so_embedding(const WPlusDual<S>& x, const WPlusDual<S>& y) {
  DenseMat<S> a = clifford_generator(x), b = clifford_generator(y);
  DenseMat<S> comm = a * b - b * a;
  S half = S(1) / S(2);
  return comm.scaled(-half);
}

/// Half-spin vector: element of the even or odd part of the exterior
/// algebra, 32 coordinates over the masks of the matching parity in
/// increasing order.
template <class S>
struct SpinVector {
  int parity = 0;  // 0 even, 1 odd
  std::vector<S> coords = std::vector<S>(32);

  static const std::vector<uint32_t>& masks(int parity) {
    static const std::vector<uint32_t> ev = even_masks(6);
    static const std::vector<uint32_t> odd = [] {
      std::vector<uint32_t> o;
      for (uint32_t m = 0; m < 64; ++m)
        if (__builtin_popcount(m) & 1) o.push_back(m);
      return o;
    }();
    return parity == 0 ? ev : odd;
  }

  static SpinVector basis(int parity, MultiIndex m) {
    SpinVector v;
    v.parity = parity;
    const auto& mm = masks(parity);
    for (size_t t = 0; t < mm.size(); ++t)
      if (mm[t] == m.bits) {
        v.coords[t] = S(1);
        return v;
      }
    throw std::invalid_argument("SpinVector: parity mismatch with mask");
  }

  friend bool operator==(const SpinVector& a, const SpinVector& b) {
    return a.parity == b.parity && a.coords == b.coords;
  }
};

/// Action of an even Clifford operator on a half-spin vector. Throws when
/// the operator does not preserve the parity of the input.
template <class S>
SpinVector<S> half_spin_action(const DenseMat<S>& op, const SpinVector<S>& s) {
  std::vector<S> full((size_t)kCliffordDim);
  const auto& mm = SpinVector<S>::masks(s.parity);
  for (size_t t = 0; t < mm.size(); ++t) full[(size_t)mm[t]] = s.coords[t];
  std::vector<S> out = op.apply(full);
  SpinVector<S> r;
  r.parity = s.parity;
  for (uint32_t m = 0; m < (uint32_t)kCliffordDim; ++m) {
    if ((__builtin_popcount(m) & 1) != s.parity) {
      if (!out[(size_t)m].is_zero())
        throw std::invalid_argument("half_spin_action: operator flips parity");
    }
  }
  for (size_t t = 0; t < mm.size(); ++t) r.coords[t] = out[(size_t)mm[t]];
  return r;
}

}  // namespace sts
