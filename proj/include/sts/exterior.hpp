#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <vector>

#include "sts/linalg.hpp"
#include "sts/scalar.hpp"

namespace sts {

/// Strictly increasing index sequence inside {1..N}, N <= 8, as a bitmask
/// (bit k-1 set <=> index k present).
struct MultiIndex {
  uint32_t bits = 0;

  MultiIndex() = default;
  explicit MultiIndex(uint32_t b) : bits(b) {}
  static MultiIndex of(std::initializer_list<int> idx) {
    MultiIndex m;
    for (int i : idx) {
      if (i < 1 || i > 8) throw std::invalid_argument("MultiIndex: index out of range");
      uint32_t b = 1u << (i - 1);
      if (m.bits & b) throw std::invalid_argument("MultiIndex: repeated index");
      m.bits |= b;
    }
    return m;
  }

  int degree() const { return __builtin_popcount(bits); }
  bool disjoint(MultiIndex o) const { return (bits & o.bits) == 0; }
  bool contains(MultiIndex o) const { return (bits & o.bits) == o.bits; }
  MultiIndex unite(MultiIndex o) const {
    if (!disjoint(o)) throw std::invalid_argument("MultiIndex: union of overlapping sets");
    return MultiIndex(bits | o.bits);
  }
  MultiIndex complement(int ground) const {
    return MultiIndex(~bits & ((1u << ground) - 1));
  }
  std::vector<int> indices() const {
    std::vector<int> out;
    for (int i = 0; i < 8; ++i)
      if (bits & (1u << i)) out.push_back(i + 1);
    return out;
  }
  friend bool operator==(MultiIndex a, MultiIndex b) { return a.bits == b.bits; }
  friend bool operator<(MultiIndex a, MultiIndex b) { return a.bits < b.bits; }
};

/// Parity (-1)^{IJ} of the permutation merging the concatenation I,J of two
/// disjoint increasing sequences into one increasing sequence; e_I e_J =
/// (-1)^{IJ} e_{I u J}.
int merge_sign(MultiIndex i, MultiIndex j);

/// Number of indices of I strictly below k.
int count_below(MultiIndex i, int k);

/// All masks over {1..n} with the given degree, increasing as integers.
std::vector<uint32_t> masks_of_degree(int n, int r);
/// All masks over {1..n} with even degree, increasing as integers.
std::vector<uint32_t> even_masks(int n);

/// Element of the exterior algebra over an indexed basis of size `ground`,
/// or of the dual exterior algebra when `dual` is set. The dual algebra is
/// identified with the dual space via the determinant pairing convention
/// det(f_k(v_j)).
template <class S>
struct ExtElement {
  int ground = 0;
  bool dual = false;
  std::map<uint32_t, S> coeff;

  ExtElement() = default;
  explicit ExtElement(int n, bool d = false) : ground(n), dual(d) {}

  static ExtElement unit(int n, bool d = false) {
    ExtElement e(n, d);
    e.coeff[0] = S(1);
    return e;
  }
  static ExtElement basis(int n, MultiIndex m, bool d = false) {
    ExtElement e(n, d);
    e.coeff[m.bits] = S(1);
    return e;
  }

  void add(MultiIndex m, const S& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = coeff.try_emplace(m.bits, v);
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) coeff.erase(it);
    }
  }

  bool is_zero() const { return coeff.empty(); }

  /// True when all terms share one degree (returned through *deg).
  bool homogeneous(int* deg = nullptr) const {
    int d = -1;
    for (const auto& [m, v] : coeff) {
      int dm = __builtin_popcount(m);
      if (d < 0)
        d = dm;
      else if (d != dm)
        return false;
    }
    if (deg) *deg = d < 0 ? 0 : d;
    return true;
  }

  ExtElement operator-() const {
    ExtElement r(ground, dual);
    for (const auto& [m, v] : coeff) r.coeff[m] = -v;
    return r;
  }
  ExtElement scaled(const S& c) const {
    ExtElement r(ground, dual);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : coeff) {
      S w = v * c;
      if (!w.is_zero()) r.coeff[m] = std::move(w);
    }
    return r;
  }
  friend ExtElement operator+(const ExtElement& a, const ExtElement& b) {
    ExtElement r = a;
    for (const auto& [m, v] : b.coeff) r.add(MultiIndex(m), v);
    return r;
  }
  friend ExtElement operator-(const ExtElement& a, const ExtElement& b) {
    ExtElement r = a;
    for (const auto& [m, v] : b.coeff) r.add(MultiIndex(m), -v);
    return r;
  }
  friend bool operator==(const ExtElement& a, const ExtElement& b) {
    return a.ground == b.ground && a.dual == b.dual && a.coeff == b.coeff;
  }
};

template <class S>
ExtElement<S> wedge(const ExtElement<S>& x, const ExtElement<S>& y) {
  if (x.ground != y.ground)
    throw std::invalid_argument("wedge: mismatched ground dimension");
  if (x.dual != y.dual) throw std::invalid_argument("wedge: mixing algebra and dual");
  ExtElement<S> r(x.ground, x.dual);
  for (const auto& [mi, vi] : x.coeff)
    for (const auto& [mj, vj] : y.coeff) {
      if (mi & mj) continue;
      int s = merge_sign(MultiIndex(mi), MultiIndex(mj));
      S v = vi * vj;
      r.add(MultiIndex(mi | mj), s < 0 ? -v : v);
    }
  return r;
}

/// Coefficient of the top form e_{1..N} in x ^ y.
template <class S>
S det_pairing(const ExtElement<S>& x, const ExtElement<S>& y, int n) {
  if (x.ground != n || y.ground != n)
    throw std::invalid_argument("det_pairing: ground dimension mismatch");
  uint32_t full = (1u << n) - 1;
  S acc{};
  for (const auto& [mi, vi] : x.coeff) {
    uint32_t need = full & ~mi;
    auto it = y.coeff.find(need);
    if (it == y.coeff.end()) continue;
    int s = merge_sign(MultiIndex(mi), MultiIndex(need));
    S v = vi * it->second;
    acc += (s < 0 ? -v : v);
  }
  return acc;
}

/// Duality e_I -> (-1)^{I Ibar} e^{Ibar} induced by the determinant pairing,
/// for homogeneous input; maps the algebra to its dual and vice versa.
template <class S>
ExtElement<S> phi(const ExtElement<S>& x, int n) {
  int deg;
  if (!x.homogeneous(&deg)) throw std::invalid_argument("phi: non-homogeneous input");
  (void)deg;
  ExtElement<S> r(n, !x.dual);
  for (const auto& [m, v] : x.coeff) {
    MultiIndex i(m), c = MultiIndex(m).complement(n);
    int s = merge_sign(i, c);
    r.add(c, s < 0 ? -v : v);
  }
  return r;
}

/// Inverse of phi: phi_inv(phi(x)) = x.
template <class S>
ExtElement<S> phi_inv(const ExtElement<S>& y, int n) {
  int deg;
  if (!y.homogeneous(&deg)) throw std::invalid_argument("phi_inv: non-homogeneous input");
  (void)deg;
  ExtElement<S> r(n, !y.dual);
  for (const auto& [m, v] : y.coeff) {
    MultiIndex c = MultiIndex(m).complement(n);
    int s = merge_sign(c, MultiIndex(m));
    r.add(c, s < 0 ? -v : v);
  }
  return r;
}

/// Odd superderivation contracting with the dual basis vector e^j:
/// delta(u) = [u == e_j] on degree one, delta(s^t) = delta(s)^t +
/// (-1)^{deg s} s^delta(t).
template <class S>
ExtElement<S> contract(int j, const ExtElement<S>& x) {
  ExtElement<S> r(x.ground, x.dual);
  uint32_t jb = 1u << (j - 1);
  for (const auto& [m, v] : x.coeff) {
    if (!(m & jb)) continue;
    int below = count_below(MultiIndex(m), j);
    r.add(MultiIndex(m & ~jb), (below & 1) ? -v : v);
  }
  return r;
}

/// Contraction against a general dual vector f = sum f_j e^j.
template <class S>
ExtElement<S> contract_dual(const std::vector<S>& f, const ExtElement<S>& x) {
  ExtElement<S> r(x.ground, x.dual);
  for (int j = 1; j <= x.ground; ++j) {
    if (f[(size_t)j - 1].is_zero()) continue;
    ExtElement<S> c = contract(j, x);
    for (const auto& [m, v] : c.coeff) r.add(MultiIndex(m), f[(size_t)j - 1] * v);
  }
  return r;
}

/// Order-reversal involution: sign (-1)^{r(r-1)/2} on the degree-r part.
template <class S>
ExtElement<S> hat_involution(const ExtElement<S>& x) {
  ExtElement<S> r(x.ground, x.dual);
  for (const auto& [m, v] : x.coeff) {
    int d = __builtin_popcount(m);
    int e = (d * (d - 1) / 2) & 1;
    r.coeff[m] = e ? -v : v;
  }
  return r;
}

/// Alternating form det(hat(s) ^ t) on the exterior algebra of a
/// six-dimensional space.
template <class S>
S ba_form(const ExtElement<S>& s, const ExtElement<S>& t) {
  if (s.ground != 6 || t.ground != 6)
    throw std::invalid_argument("ba_form: ground dimension must be 6");
  return det_pairing(hat_involution(s), t, 6);
}

/// Derivation extension of a gl(W) matrix to the exterior algebra) applied
/// to a single element: m acts on degree one by its matrix, and as a
/// derivation on products.
template <class S>
ExtElement<S> ext_derivation_apply(const DenseMat<S>& m, const ExtElement<S>& x) {
  ExtElement<S> r(x.ground, x.dual);
  for (const auto& [mask, v] : x.coeff) {
    for (int pos = 0; pos < x.ground; ++pos) {
      if (!(mask & (1u << pos))) continue;
      // replace basis index pos+1 by m(e_{pos+1}) = sum_k m(k,pos) e_{k+1}
      for (int k = 0; k < x.ground; ++k) {
        const S& c = m.at(k, pos);
        if (c.is_zero()) continue;
        uint32_t rest = mask & ~(1u << pos);
        if (rest & (1u << k)) continue;  // repeated factor
        // sign: move e_{k+1} into the slot of e_{pos+1}
        int s = (count_below(MultiIndex(rest), pos + 1) +
                 count_below(MultiIndex(rest), k + 1)) &
                1;
        S w = v * c;
        r.add(MultiIndex(rest | (1u << k)), s ? -w : w);
      }
    }
  }
  return r;
}

using ExtR = ExtElement<Rational>;
using ExtC = ExtElement<GaussianRational>;

}  // namespace sts
