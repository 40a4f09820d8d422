#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "sts/clifford.hpp"
#include "sts/models.hpp"
#include "sts/rng.hpp"

namespace sts {

namespace {

// ------------------------------------------------------------ mask indices

struct MaskIndex {
  std::vector<uint32_t> masks;
  std::array<int, 256> pos{};

  explicit MaskIndex(std::vector<uint32_t> ms) : masks(std::move(ms)) {
    pos.fill(-1);
    for (int i = 0; i < (int)masks.size(); ++i) pos[(size_t)masks[(size_t)i]] = i;
  }
  int size() const { return (int)masks.size(); }
  int at(uint32_t m) const {
    int p = pos[(size_t)m];
    if (p < 0) throw std::logic_error("MaskIndex: unknown mask");
    return p;
  }
};

std::string mask_name(uint32_t m, const char* prefix = "e") {
  if (m == 0) return "1";
  std::string s(prefix);
  for (int i = 0; i < 8; ++i)
    if (m & (1u << i)) s += std::to_string(i + 1);
  return s;
}

// coefficients of an ExtElement over a mask index, as a sparse column
std::vector<std::pair<int, Rational>> ext_to_col(const ExtR& x, const MaskIndex& mi) {
  std::vector<std::pair<int, Rational>> out;
  for (const auto& [m, v] : x.coeff) out.emplace_back(mi.at(m), v);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// ------------------------------------------------- generic trace-form solve

struct TraceCore {
  int nT = 0;
  Rational factor;
  std::vector<SparseColMat> act;  // acting basis on T
  std::vector<Vec> omega_rows;
  SparseColMat gram_inv;

  Vec pair_coeffs(int i, int j) const {
    int dimL = (int)act.size();
    Vec coeffs((size_t)dimL);
    for (int a = 0; a < dimL; ++a) {
      auto [lo, hi] = act[(size_t)a].col_range(i);
      Rational v;
      for (int s = lo; s < hi; ++s)
        v += act[(size_t)a].ent[(size_t)s].second *
             omega_rows[(size_t)act[(size_t)a].ent[(size_t)s].first][(size_t)j];
      if (v.is_zero()) continue;
      v *= factor;
      // coeffs += v * gram_inv column a
      auto [glo, ghi] = gram_inv.col_range(a);
      for (int s = glo; s < ghi; ++s)
        coeffs[(size_t)gram_inv.ent[(size_t)s].first] += v * gram_inv.ent[(size_t)s].second;
    }
    return coeffs;
  }

  SparseColMat combine(const Vec& coeffs) const {
    std::map<std::pair<int, int>, Rational> acc;  // (col, row)
    for (size_t a = 0; a < act.size(); ++a) {
      if (coeffs[a].is_zero()) continue;
      const SparseColMat& m = act[a];
      for (int j = 0; j < nT; ++j) {
        auto [lo, hi] = m.col_range(j);
        for (int s = lo; s < hi; ++s) {
          auto& slot = acc[{j, m.ent[(size_t)s].first}];
          slot += coeffs[a] * m.ent[(size_t)s].second;
        }
      }
    }
    std::vector<std::vector<std::pair<int, Rational>>> cols((size_t)nT);
    for (auto& [cr, v] : acc)
      if (!v.is_zero()) cols[(size_t)cr.first].emplace_back(cr.second, v);
    return SparseColMat::from_columns(nT, cols);
  }

  std::vector<SparseColMat> solve_all() const {
    std::vector<SparseColMat> d;
    d.reserve((size_t)nT * (nT + 1) / 2);
    for (int i = 0; i < nT; ++i)
      for (int j = i; j < nT; ++j) d.push_back(combine(pair_coeffs(i, j)));
    return d;
  }
};

SparseColMat invert_to_cols(const Matrix& gram) {
  return SparseColMat::from_matrix(inverse(gram));
}

// grading class of a wedge monomial: (#plus - #minus) mod 4, where the
// "plus" indices are 1..split and the rest are "minus".
int monomial_class(uint32_t mask, int split) {
  int plus = __builtin_popcount(mask & ((1u << split) - 1));
  int minus = __builtin_popcount(mask) - plus;
  return ((plus - minus) % 4 + 4) % 4;
}

// ------------------------------------------------------------------ F4 core

struct F4Core {
  MaskIndex mi{masks_of_degree(6, 3)};
  SubBasis tbasis;
  TripleSystem sys;
  Z4Grading grading;
  std::vector<std::string> names;
};

const F4Core& f4_core() {
  static const F4Core core = [] {
    F4Core c;
    const int amb = 20;
    // alternating form on W over basis (u1,u2,u3,v1,v2,v3)
    Matrix bw(6, 6);
    for (int i = 0; i < 3; ++i) {
      bw.set(i, i + 3, Rational(1));
      bw.set(i + 3, i, Rational(-1));
    }
    // contraction /\^3 W -> W
    Matrix contraction(6, amb);
    for (int col = 0; col < amb; ++col) {
      auto idx = MultiIndex(c.mi.masks[(size_t)col]).indices();
      int i = idx[0] - 1, j = idx[1] - 1, k = idx[2] - 1;
      contraction.add_at(k, col, bw.at(i, j));
      contraction.add_at(i, col, bw.at(j, k));
      contraction.add_at(j, col, bw.at(k, i));
    }
    std::vector<Vec> ker = kernel(contraction);
    if ((int)ker.size() != 14)
      throw std::runtime_error("f4: contraction kernel dimension is not 14");
    c.tbasis = SubBasis::build(amb, std::move(ker));
    const int nT = c.tbasis.dim();

    // acting basis: gamma_{e_a, e_b} for a <= b
    std::vector<Matrix> nat;
    for (int a = 0; a < 6; ++a)
      for (int b = a; b < 6; ++b) {
        Matrix g(6, 6);
        for (int col = 0; col < 6; ++col) {
          if (!bw.at(a, col).is_zero()) g.add_at(b, col, bw.at(a, col));
          if (!bw.at(b, col).is_zero()) g.add_at(a, col, bw.at(b, col));
        }
        nat.push_back(std::move(g));
      }
    // det-pairing gram on /\^3
    auto pair_l3 = [&](int a, int b) {
      return det_pairing(ExtR::basis(6, MultiIndex(c.mi.masks[(size_t)a])),
                         ExtR::basis(6, MultiIndex(c.mi.masks[(size_t)b])), 6);
    };
    auto first_nonzero = [&](const Vec& v) {
      for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) return (int)i;
      throw std::logic_error("f4: zero basis vector");
    };
    TraceCore tc;
    tc.nT = nT;
    tc.factor = Rational(-2);
    // omega on T: v_r^T G v_s
    Matrix omega(nT, nT);
    for (int r = 0; r < nT; ++r)
      for (int s = 0; s < nT; ++s) {
        Rational v;
        for (int pr = 0; pr < amb; ++pr) {
          if (c.tbasis.vecs[(size_t)r][(size_t)pr].is_zero()) continue;
          for (int ps = 0; ps < amb; ++ps) {
            if (c.tbasis.vecs[(size_t)s][(size_t)ps].is_zero()) continue;
            Rational g = pair_l3(pr, ps);
            if (!g.is_zero())
              v += c.tbasis.vecs[(size_t)r][(size_t)pr] * c.tbasis.vecs[(size_t)s][(size_t)ps] * g;
          }
        }
        if (!v.is_zero()) omega.set(r, s, v);
      }
    tc.omega_rows = omega.dense_rows();
    // restricted action of each generator
    Matrix gram(21, 21);
    for (int a = 0; a < 21; ++a)
      for (int b = 0; b < 21; ++b) {
        Rational t = nat[(size_t)a].trace_product(nat[(size_t)b]);
        if (!t.is_zero()) gram.set(a, b, t);
      }
    DenseMat<Rational> dm(6, 6);
    for (const Matrix& g : nat) {
      for (int r = 0; r < 6; ++r)
        for (int s = 0; s < 6; ++s) dm.at(r, s) = g.at(r, s);
      std::vector<std::vector<std::pair<int, Rational>>> cols((size_t)nT);
      for (int col = 0; col < nT; ++col) {
        ExtR x(6);
        for (int p = 0; p < amb; ++p)
          if (!c.tbasis.vecs[(size_t)col][(size_t)p].is_zero())
            x.add(MultiIndex(c.mi.masks[(size_t)p]), c.tbasis.vecs[(size_t)col][(size_t)p]);
        ExtR y = ext_derivation_apply(dm, x);
        Vec ydense((size_t)20);
        for (const auto& [m, v] : y.coeff) ydense[(size_t)c.mi.at(m)] = v;
        Vec coords = c.tbasis.coords(ydense);
        for (int r = 0; r < nT; ++r)
          if (!coords[(size_t)r].is_zero()) cols[(size_t)col].emplace_back(r, coords[(size_t)r]);
      }
      tc.act.push_back(SparseColMat::from_columns(nT, cols));
    }
    tc.gram_inv = invert_to_cols(gram);
    std::vector<SparseColMat> d = tc.solve_all();
    c.sys = TripleSystem::from_parts({Family::f4, 0, 0, 0},
                                     BilinearForm(omega, BilinearForm::Sym::alternating),
                                     std::move(d));
    Rational alpha = calibrate_alpha(c.sys);
    if (!alpha.is_one()) throw std::runtime_error("f4: calibration scalar is not 1");
    c.grading.deg.resize((size_t)nT);
    for (int r = 0; r < nT; ++r) {
      uint32_t lead = c.mi.masks[(size_t)first_nonzero(c.tbasis.vecs[(size_t)r])];
      c.grading.deg[(size_t)r] = monomial_class(lead, 3);
      c.names.push_back(mask_name(lead));
    }
    return c;
  }();
  return core;
}

// ------------------------------------------------------------------ E6 core

struct E6Core {
  MaskIndex mi{masks_of_degree(6, 3)};
  std::vector<Matrix> nat;  // sl(W) basis as 6x6
  TraceCore tc;
  TripleSystem sys;
  Z4Grading grading;
  std::vector<std::string> names;
};

// sl basis: E_ab (a != b, lexicographic) then H_i = E_ii - E_{i+1,i+1}
std::vector<Matrix> sl_basis(int n) {
  std::vector<Matrix> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      Matrix m(n, n);
      m.set(a, b, Rational(1));
      out.push_back(std::move(m));
    }
  for (int i = 0; i + 1 < n; ++i) {
    Matrix m(n, n);
    m.set(i, i, Rational(1));
    m.set(i + 1, i + 1, Rational(-1));
    out.push_back(std::move(m));
  }
  return out;
}

SparseColMat derivation_action(const Matrix& nat, const MaskIndex& mi, int ground) {
  DenseMat<Rational> dm(ground, ground);
  for (int r = 0; r < ground; ++r)
    for (int s = 0; s < ground; ++s) dm.at(r, s) = nat.at(r, s);
  std::vector<std::vector<std::pair<int, Rational>>> cols((size_t)mi.size());
  for (int col = 0; col < mi.size(); ++col) {
    ExtR y = ext_derivation_apply(dm, ExtR::basis(ground, MultiIndex(mi.masks[(size_t)col])));
    cols[(size_t)col] = ext_to_col(y, mi);
  }
  return SparseColMat::from_columns(mi.size(), cols);
}

const E6Core& e6_core() {
  static const E6Core core = [] {
    E6Core c;
    const int nT = 20;
    c.nat = sl_basis(6);
    c.tc.nT = nT;
    c.tc.factor = Rational(-2);
    Matrix omega(nT, nT);
    for (int a = 0; a < nT; ++a)
      for (int b = 0; b < nT; ++b) {
        Rational v = det_pairing(ExtR::basis(6, MultiIndex(c.mi.masks[(size_t)a])),
                                 ExtR::basis(6, MultiIndex(c.mi.masks[(size_t)b])), 6);
        if (!v.is_zero()) omega.set(a, b, v);
      }
    c.tc.omega_rows = omega.dense_rows();
    Matrix gram((int)c.nat.size(), (int)c.nat.size());
    for (int a = 0; a < (int)c.nat.size(); ++a)
      for (int b = 0; b < (int)c.nat.size(); ++b) {
        Rational t = c.nat[(size_t)a].trace_product(c.nat[(size_t)b]);
        if (!t.is_zero()) gram.set(a, b, t);
      }
    c.tc.gram_inv = invert_to_cols(gram);
    for (const Matrix& m : c.nat) c.tc.act.push_back(derivation_action(m, c.mi, 6));
    std::vector<SparseColMat> d = c.tc.solve_all();
    c.sys = TripleSystem::from_parts({Family::e6_split, 0, 0, 0},
                                     BilinearForm(omega, BilinearForm::Sym::alternating),
                                     std::move(d));
    Rational alpha = calibrate_alpha(c.sys);
    if (!alpha.is_one()) throw std::runtime_error("e6: calibration scalar is not 1");
    c.grading.deg.resize((size_t)nT);
    for (int r = 0; r < nT; ++r) {
      c.grading.deg[(size_t)r] = monomial_class(c.mi.masks[(size_t)r], 3);
      c.names.push_back(mask_name(c.mi.masks[(size_t)r]));
    }
    return c;
  }();
  return core;
}

// ------------------------------------------------------------------ E7 core

struct E7Core {
  MaskIndex mi{even_masks(6)};  // 32 even masks
  std::vector<WPlusDual<Rational>> sob_x, sob_y;  // sigma basis pairs
  std::vector<Matrix> nat;                        // 12x12
  TraceCore tc;
  TripleSystem sys;
  Z4Grading grading;
  std::vector<std::string> names;
};

SparseColMat even_restriction(const DenseMat<Rational>& op64, const MaskIndex& mi) {
  std::vector<std::vector<std::pair<int, Rational>>> cols((size_t)mi.size());
  for (int col = 0; col < mi.size(); ++col) {
    uint32_t cm = mi.masks[(size_t)col];
    for (int row = 0; row < mi.size(); ++row) {
      const Rational& v = op64.at((int)mi.masks[(size_t)row], (int)cm);
      if (!v.is_zero()) cols[(size_t)col].emplace_back(row, v);
    }
    // entries with odd-mask rows must vanish for an even operator
    for (uint32_t m = 0; m < 64; ++m)
      if (__builtin_popcount(m) & 1)
        if (!op64.at((int)m, (int)cm).is_zero())
          throw std::logic_error("even_restriction: operator is not even");
  }
  return SparseColMat::from_columns(mi.size(), cols);
}

const E7Core& e7_core() {
  static const E7Core core = [] {
    E7Core c;
    const int nT = 32;
    using W = WPlusDual<Rational>;
    auto add_pair = [&](const W& x, const W& y) {
      c.sob_x.push_back(x);
      c.sob_y.push_back(y);
    };
    for (int a = 1; a <= 6; ++a)
      for (int b = a + 1; b <= 6; ++b) add_pair(W::basis_w(a), W::basis_w(b));
    for (int a = 1; a <= 6; ++a)
      for (int b = a + 1; b <= 6; ++b) add_pair(W::basis_f(a), W::basis_f(b));
    for (int a = 1; a <= 6; ++a)
      for (int b = 1; b <= 6; ++b)
        if (a != b) add_pair(W::basis_w(a), W::basis_f(b));
    for (int a = 1; a <= 6; ++a) add_pair(W::basis_f(a), W::basis_w(a));  // sigma_{e^a, e_a}
    const int dimL = (int)c.sob_x.size();
    if (dimL != 66) throw std::logic_error("e7: sigma basis size");
    c.tc.nT = nT;
    c.tc.factor = Rational(-4);
    Matrix omega(nT, nT);
    for (int a = 0; a < nT; ++a)
      for (int b = 0; b < nT; ++b) {
        Rational v = ba_form(ExtR::basis(6, MultiIndex(c.mi.masks[(size_t)a])),
                             ExtR::basis(6, MultiIndex(c.mi.masks[(size_t)b])));
        if (!v.is_zero()) omega.set(a, b, v);
      }
    c.tc.omega_rows = omega.dense_rows();
    Matrix gram(dimL, dimL);
    for (int a = 0; a < dimL; ++a) {
      DenseMat<Rational> na = so_natural(c.sob_x[(size_t)a], c.sob_y[(size_t)a]);
      Matrix ma(12, 12);
      for (int r = 0; r < 12; ++r)
        for (int s = 0; s < 12; ++s)
          if (!na.at(r, s).is_zero()) ma.set(r, s, na.at(r, s));
      c.nat.push_back(std::move(ma));
    }
    for (int a = 0; a < dimL; ++a)
      for (int b = 0; b < dimL; ++b) {
        Rational t = c.nat[(size_t)a].trace_product(c.nat[(size_t)b]);
        if (!t.is_zero()) gram.set(a, b, t);
      }
    c.tc.gram_inv = invert_to_cols(gram);
    for (int a = 0; a < dimL; ++a) {
      DenseMat<Rational> spin = so_embedding(c.sob_x[(size_t)a], c.sob_y[(size_t)a]);
      c.tc.act.push_back(even_restriction(spin, c.mi));
    }
    std::vector<SparseColMat> d = c.tc.solve_all();
    c.sys = TripleSystem::from_parts({Family::e7_split, 0, 0, 0},
                                     BilinearForm(omega, BilinearForm::Sym::alternating),
                                     std::move(d));
    Rational alpha = calibrate_alpha(c.sys);
    if (!alpha.is_one()) throw std::runtime_error("e7: calibration scalar is not 1");
    c.grading.deg.resize((size_t)nT);
    for (int r = 0; r < nT; ++r) {
      int dm = __builtin_popcount(c.mi.masks[(size_t)r]) % 4;  // 0 or 2
      c.grading.deg[(size_t)r] = dm == 0 ? 1 : 3;
      c.names.push_back(mask_name(c.mi.masks[(size_t)r]));
    }
    return c;
  }();
  return core;
}

// ------------------------------------------------------------------ E8 core

struct E8Core {
  MaskIndex m2{masks_of_degree(8, 2)};   // 28
  MaskIndex m4{masks_of_degree(8, 4)};   // 70
  std::vector<Matrix> sl;                // 63 matrices 8x8
  TraceCore tc;                          // acting = sl (63) then wedge (70)
  LieAlgebra lial{133};
  TripleSystem sys;
  Z4Grading grading;
  std::vector<std::string> names;
};

// expands an 8x8 traceless matrix over the sl basis (E_ab then H_i)
Vec expand_sl8(const Matrix& m) {
  Vec out((size_t)63);
  int t = 0;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      if (a == b) continue;
      out[(size_t)t++] = m.at(a, b);
    }
  // diagonal: partial sums over H_i = E_ii - E_{i+1,i+1}
  Rational acc;
  for (int i = 0; i < 7; ++i) {
    acc += m.at(i, i);
    out[(size_t)(56 + i)] = acc;
  }
  return out;
}

bool lie_jacobi_sampled(const LieAlgebra& l, uint64_t seed, long long count) {
  Lcg rng(seed);
  for (long long s = 0; s < count; ++s) {
    int i = (int)rng.below((uint64_t)l.dim);
    int j = (int)rng.below((uint64_t)l.dim);
    int k = (int)rng.below((uint64_t)l.dim);
    SparseVec acc = l.ad(k, l.bracket_of(i, j));
    acc.axpy(Rational(1), l.ad(i, l.bracket_of(j, k)));
    acc.axpy(Rational(1), l.ad(j, l.bracket_of(k, i)));
    if (!acc.empty()) return false;
  }
  return true;
}

const E8Core& e8_core() {
  static const E8Core core = [] {
    E8Core c;
    const int nT = 56;
    c.sl = sl_basis(8);
    // --- Lie algebra L = sl(8) + /\^4
    Matrix slgram(63, 63);
    for (int a = 0; a < 63; ++a)
      for (int b = 0; b < 63; ++b) {
        Rational t = c.sl[(size_t)a].trace_product(c.sl[(size_t)b]);
        if (!t.is_zero()) slgram.set(a, b, t);
      }
    SparseColMat slgram_inv = invert_to_cols(slgram);
    // [sl, sl]
    for (int a = 0; a < 63; ++a)
      for (int b = a + 1; b < 63; ++b) {
        Matrix comm = c.sl[(size_t)a] * c.sl[(size_t)b] - c.sl[(size_t)b] * c.sl[(size_t)a];
        Vec e = expand_sl8(comm);
        c.lial.set_bracket(a, b, SparseVec::from_dense(e));
      }
    // [sl, w_K]: derivation action on /\^4
    std::vector<SparseColMat> sl_on_l4;
    for (const Matrix& m : c.sl) sl_on_l4.push_back(derivation_action(m, c.m4, 8));
    for (int a = 0; a < 63; ++a)
      for (int k = 0; k < 70; ++k) {
        SparseVec v = sl_on_l4[(size_t)a].col_sparse(k);
        for (auto& e : v.nz) e.first += 63;
        c.lial.set_bracket(a, 63 + k, std::move(v));
      }
    // [w_K, w_K']: the sl element with trace(f [x,y]) = det pairing of f.x and y
    for (int k1 = 0; k1 < 70; ++k1)
      for (int k2 = k1 + 1; k2 < 70; ++k2) {
        Vec rhs((size_t)63);
        bool any = false;
        for (int a = 0; a < 63; ++a) {
          // (f_a . e_{K1} | e_{K2})
          SparseVec img = sl_on_l4[(size_t)a].col_sparse(k1);
          Rational v;
          for (const auto& [m, coef] : img.nz) {
            uint32_t mm = c.m4.masks[(size_t)m];
            uint32_t k2m = c.m4.masks[(size_t)k2];
            if ((mm & k2m) == 0 && (mm | k2m) == 0xffu)
              v += coef * Rational(merge_sign(MultiIndex(mm), MultiIndex(k2m)));
          }
          if (!v.is_zero()) {
            rhs[(size_t)a] = v;
            any = true;
          }
        }
        SparseVec expansion;
        if (any) {
          Vec coeffs((size_t)63);
          for (int a = 0; a < 63; ++a) {
            if (rhs[(size_t)a].is_zero()) continue;
            auto [lo, hi] = slgram_inv.col_range(a);
            for (int s = lo; s < hi; ++s)
              coeffs[(size_t)slgram_inv.ent[(size_t)s].first] +=
                  rhs[(size_t)a] * slgram_inv.ent[(size_t)s].second;
          }
          expansion = SparseVec::from_dense(coeffs);
        }
        c.lial.set_bracket(63 + k1, 63 + k2, std::move(expansion));
      }
    if (!lie_jacobi_sampled(c.lial, kDefaultSeed, 100000))
      throw std::runtime_error("e8: acting algebra fails a sampled Jacobi identity");

    // --- action on T = /\^2 (28) + dual /\^2 (28)
    c.tc.nT = nT;
    c.tc.factor = Rational(-2);
    auto dual_index = [&](uint32_t m) { return 28 + c.m2.at(m); };
    for (int a = 0; a < 63; ++a) {
      std::vector<std::vector<std::pair<int, Rational>>> cols((size_t)nT);
      SparseColMat on2 = derivation_action(c.sl[(size_t)a], c.m2, 8);
      Matrix neg = c.sl[(size_t)a].transpose().scaled(Rational(-1));
      SparseColMat on2d = derivation_action(neg, c.m2, 8);
      for (int j = 0; j < 28; ++j) {
        cols[(size_t)j] = [&] {
          std::vector<std::pair<int, Rational>> col;
          auto [lo, hi] = on2.col_range(j);
          for (int s = lo; s < hi; ++s) col.push_back(on2.ent[(size_t)s]);
          return col;
        }();
        auto [lo, hi] = on2d.col_range(j);
        for (int s = lo; s < hi; ++s)
          cols[(size_t)(28 + j)].emplace_back(on2d.ent[(size_t)s].first + 28,
                                              on2d.ent[(size_t)s].second);
      }
      c.tc.act.push_back(SparseColMat::from_columns(nT, cols));
    }
    for (int k = 0; k < 70; ++k) {
      ExtR ek = ExtR::basis(8, MultiIndex(c.m4.masks[(size_t)k]));
      std::vector<std::vector<std::pair<int, Rational>>> cols((size_t)nT);
      for (int j = 0; j < 28; ++j) {
        // on e_J: Phi_6(e_K ^ e_J) lands in the dual wedge square
        ExtR img = phi(wedge(ek, ExtR::basis(8, MultiIndex(c.m2.masks[(size_t)j]))), 8);
        for (const auto& [m, v] : img.coeff)
          cols[(size_t)j].emplace_back(dual_index(m), v);
        // on e^J: Phi_2^{-1}(Phi_4(e_K) ^ e^J) lands in the wedge square
        ExtR imgd = phi_inv(wedge(phi(ek, 8), ExtR::basis(8, MultiIndex(c.m2.masks[(size_t)j]), true)), 8);
        for (const auto& [m, v] : imgd.coeff)
          cols[(size_t)(28 + j)].emplace_back(c.m2.at(m), v);
      }
      c.tc.act.push_back(SparseColMat::from_columns(nT, cols));
    }
    // gram on L: sl trace block + det pairing block
    Matrix gram(133, 133);
    for (int a = 0; a < 63; ++a)
      for (int b = 0; b < 63; ++b) {
        const Rational& t = slgram.at(a, b);
        if (!t.is_zero()) gram.set(a, b, t);
      }
    for (int k1 = 0; k1 < 70; ++k1)
      for (int k2 = 0; k2 < 70; ++k2) {
        uint32_t a = c.m4.masks[(size_t)k1], b = c.m4.masks[(size_t)k2];
        if ((a & b) == 0 && (a | b) == 0xffu)
          gram.set(63 + k1, 63 + k2, Rational(merge_sign(MultiIndex(a), MultiIndex(b))));
      }
    c.tc.gram_inv = invert_to_cols(gram);
    // omega on T
    Matrix omega(nT, nT);
    for (int j = 0; j < 28; ++j) {
      omega.set(j, 28 + j, Rational(1));
      omega.set(28 + j, j, Rational(-1));
    }
    c.tc.omega_rows = omega.dense_rows();
    std::vector<SparseColMat> d = c.tc.solve_all();
    c.sys = TripleSystem::from_parts({Family::e8_split, 0, 0, 0},
                                     BilinearForm(omega, BilinearForm::Sym::alternating),
                                     std::move(d));
    Rational alpha = calibrate_alpha(c.sys);
    if (!alpha.is_one()) throw std::runtime_error("e8: calibration scalar is not 1");
    c.grading.deg.assign((size_t)nT, 1);
    for (int j = 0; j < 28; ++j) c.grading.deg[(size_t)(28 + j)] = 3;
    for (int j = 0; j < 28; ++j) c.names.push_back(mask_name(c.m2.masks[(size_t)j]));
    for (int j = 0; j < 28; ++j) c.names.push_back(mask_name(c.m2.masks[(size_t)j], "e^"));
    return c;
  }();
  return core;
}

// --------------------------------------------- fixed-subspace transport

struct FixedEntry {
  Vec v;          // rational coordinates in the complex model basis
  bool imag;      // the actual basis vector is i * v
  int deg;        // 1 or 3
  std::string name;
};

BuiltModel transport_fixed(const TripleSystem& s, const std::vector<FixedEntry>& basis,
                           bool twist_i, ModelLabel label) {
  const int nS = s.dim();
  const int nN = (int)basis.size();
  std::vector<Vec> real_list, imag_list;
  std::vector<int> coord_index(basis.size());  // index within its class basis
  for (size_t a = 0; a < basis.size(); ++a) {
    if (basis[a].imag) {
      coord_index[a] = (int)imag_list.size();
      imag_list.push_back(basis[a].v);
    } else {
      coord_index[a] = (int)real_list.size();
      real_list.push_back(basis[a].v);
    }
  }
  SubBasis realb = real_list.empty() ? SubBasis{} : SubBasis::build(nS, real_list);
  SubBasis imagb = imag_list.empty() ? SubBasis{} : SubBasis::build(nS, imag_list);
  // positions of class members in the new basis
  std::vector<int> real_pos, imag_pos;
  for (size_t a = 0; a < basis.size(); ++a)
    (basis[a].imag ? imag_pos : real_pos).push_back((int)a);

  auto phase_of = [&](int count_imag) { return ((twist_i ? 1 : 0) + count_imag) % 4; };

  // form
  Matrix omega(nN, nN);
  for (int a = 0; a < nN; ++a)
    for (int b = 0; b < nN; ++b) {
      Rational v = s.omega().eval(basis[(size_t)a].v, basis[(size_t)b].v);
      int p = phase_of((basis[(size_t)a].imag ? 1 : 0) + (basis[(size_t)b].imag ? 1 : 0));
      if (p % 2 == 1) {
        if (!v.is_zero())
          throw std::runtime_error("transport: form has a residual imaginary part");
        continue;
      }
      if (p == 2) v = -v;
      if (!v.is_zero()) omega.set(a, b, v);
    }

  std::vector<SparseColMat> d;
  d.reserve((size_t)nN * (nN + 1) / 2);
  std::vector<SparseVec> sv(basis.size());
  for (size_t a = 0; a < basis.size(); ++a) sv[a] = SparseVec::from_dense(basis[a].v);
  for (int a = 0; a < nN; ++a)
    for (int b = a; b < nN; ++b) {
      // real bilinear combination of the complex structure constants
      std::map<std::pair<int, int>, Rational> dmap;  // (col, row)
      for (const auto& [i, vi] : sv[(size_t)a].nz)
        for (const auto& [j, vj] : sv[(size_t)b].nz) {
          Rational cij = vi * vj;
          const SparseColMat& m = s.d((int)i, (int)j);
          for (int col = 0; col < nS; ++col) {
            auto [lo, hi] = m.col_range(col);
            for (int t = lo; t < hi; ++t) {
              auto& slot = dmap[{col, m.ent[(size_t)t].first}];
              slot += cij * m.ent[(size_t)t].second;
            }
          }
        }
      SparseColMat realD(nS);
      {
        std::vector<std::vector<std::pair<int, Rational>>> cols((size_t)nS);
        for (auto& [cr, v] : dmap)
          if (!v.is_zero()) cols[(size_t)cr.first].emplace_back(cr.second, v);
        realD = SparseColMat::from_columns(nS, cols);
      }
      std::vector<std::vector<std::pair<int, Rational>>> cols((size_t)nN);
      int base_phase = (basis[(size_t)a].imag ? 1 : 0) + (basis[(size_t)b].imag ? 1 : 0);
      for (int cidx = 0; cidx < nN; ++cidx) {
        Vec r = realD.apply(basis[(size_t)cidx].v);
        int p = phase_of(base_phase + (basis[(size_t)cidx].imag ? 1 : 0));
        bool to_imag = (p % 2) == 1;
        int sign = (p == 2 || p == 3) ? -1 : 1;
        const SubBasis& sb = to_imag ? imagb : realb;
        const std::vector<int>& posmap = to_imag ? imag_pos : real_pos;
        Vec coords = sb.coords(r);  // throws when the product leaves the span
        for (int k = 0; k < (int)coords.size(); ++k) {
          if (coords[(size_t)k].is_zero()) continue;
          Rational val = sign < 0 ? -coords[(size_t)k] : coords[(size_t)k];
          cols[(size_t)cidx].emplace_back(posmap[(size_t)k], val);
        }
        std::sort(cols[(size_t)cidx].begin(), cols[(size_t)cidx].end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
      }
      d.push_back(SparseColMat::from_columns(nN, cols));
    }
  BuiltModel bm;
  bm.system = TripleSystem::from_parts(label,
                                       BilinearForm(omega, BilinearForm::Sym::alternating),
                                       std::move(d));
  Rational alpha = calibrate_alpha(bm.system);
  if (!alpha.is_one())
    throw std::runtime_error("transport: calibration scalar is " + alpha.to_string());
  for (const auto& e : basis) {
    bm.grading.deg.push_back(e.deg);
    bm.basis_names.push_back(e.name);
  }
  return bm;
}

// kernel of (P - sign I), as fixed-entry building blocks
std::vector<Vec> involution_eigenspace(const Matrix& p, int sign) {
  int n = p.rows();
  Matrix shifted = p;
  for (int i = 0; i < n; ++i) shifted.add_at(i, i, Rational(-sign));
  return kernel(shifted);
}

std::string fixed_name(const SubBasis&, const Vec& v, const std::vector<std::string>& coord_names,
                       bool imag) {
  // name by the first nonzero coordinate
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return (imag ? "i*[" : "[") + coord_names[i] + "]";
  return imag ? "i*[0]" : "[0]";
}

}  // namespace

// ------------------------------------------------------------ public builds

BuiltModel build_f4() {
  const F4Core& c = f4_core();
  return {c.sys, c.grading, c.names};
}

BuiltModel build_e6_split() {
  const E6Core& c = e6_core();
  return {c.sys, c.grading, c.names};
}

BuiltModel build_e7_split() {
  const E7Core& c = e7_core();
  return {c.sys, c.grading, c.names};
}

BuiltModel build_e8_split() {
  const E8Core& c = e8_core();
  return {c.sys, c.grading, c.names};
}

Matrix e6_gamma_matrix(int p) {
  if (p < 3 || p > 6) throw std::invalid_argument("e6_gamma_matrix: p in 3..6");
  const E6Core& c = e6_core();
  Matrix g(20, 20);
  for (int col = 0; col < 20; ++col) {
    uint32_t m = c.mi.masks[(size_t)col];
    // conjugate-linear map W -> W^* built from the diagonal hermitian form,
    // then back through the duality of the third exterior power
    int flips = __builtin_popcount(m & ~((1u << p) - 1));  // indices above p
    ExtR img = phi_inv(ExtR::basis(6, MultiIndex(m), true), 6);
    for (const auto& [mm, v] : img.coeff) {
      Rational val = (flips & 1) ? -v : v;
      g.add_at(c.mi.at(mm), col, val);
    }
  }
  return g;
}

BuiltModel build_e6_nonsplit(int p) {
  if (p != 3 && p != 5) throw std::invalid_argument("build_e6_nonsplit: p must be 3 or 5");
  const E6Core& c = e6_core();
  Matrix g = e6_gamma_matrix(p);
  if (!(g * g == Matrix::identity(20)))
    throw std::runtime_error("e6 nonsplit: conjugation does not square to the identity");
  std::vector<FixedEntry> entries;
  std::vector<Vec> plus = involution_eigenspace(g, 1);
  std::vector<Vec> minus = involution_eigenspace(g, -1);
  SubBasis sb_plus = SubBasis::build(20, plus), sb_minus = SubBasis::build(20, minus);
  // i * (minus eigenvector) has degree 1; plus eigenvectors have degree 3
  for (const auto& v : minus) entries.push_back({v, true, 1, fixed_name(sb_minus, v, c.names, true)});
  for (const auto& v : plus) entries.push_back({v, false, 3, fixed_name(sb_plus, v, c.names, false)});
  if ((int)entries.size() != 20)
    throw std::runtime_error("e6 nonsplit: fixed subspace dimension is not 20");
  Family fam = p == 3 ? Family::e6_su33 : Family::e6_su51;
  return transport_fixed(c.sys, entries, true, {fam, 0, p, 6 - p});
}

Matrix e7_gamma_so102() {
  DenseMat<Rational> prod = DenseMat<Rational>::identity(64);
  for (int i = 1; i <= 4; ++i) {
    DenseMat<Rational> gen = op_lmul<Rational>(i) - op_contract<Rational>(i);
    prod = prod * gen;
  }
  const E7Core& c = e7_core();
  SparseColMat r = even_restriction(prod, c.mi);
  return r.to_matrix();
}

BuiltModel build_e7_so102() {
  const E7Core& c = e7_core();
  Matrix g = e7_gamma_so102();
  if (!(g * g == Matrix::identity(32)))
    throw std::runtime_error("e7 so(10,2): twist does not square to the identity");
  // grading element: half the sigma built on the hyperbolic pair of the
  // first positive and first negative vector; eigenvalues +-1/2 on spins
  using W = WPlusDual<Rational>;
  W w1 = W::basis_w(1);
  w1.f[0] = Rational(1);  // e_1 + e^1
  W w11 = W::basis_w(5);
  w11.f[4] = Rational(-1);  // e_5 - e^5
  DenseMat<Rational> spin = so_embedding(w1, w11).scaled(Rational(1, 2));
  SparseColMat hres = even_restriction(spin, c.mi);
  Matrix h = hres.to_matrix();
  {
    Matrix plus = h, minus = h;
    for (int i = 0; i < 32; ++i) {
      plus.add_at(i, i, Rational(-1, 2));
      minus.add_at(i, i, Rational(1, 2));
    }
    if (!(plus * minus).is_zero())
      throw std::runtime_error("e7 so(10,2): grading element is not split with halves");
  }
  auto block = [&](int gsign, const Rational& eig) {
    // kernel of [g - gsign I; h - eig I]
    Matrix stacked(64, 32);
    for (int r = 0; r < 32; ++r)
      for (int cix = 0; cix < 32; ++cix) {
        Rational top = g.at(r, cix) - (r == cix ? Rational(gsign) : Rational(0));
        Rational bot = h.at(r, cix) - (r == cix ? eig : Rational(0));
        if (!top.is_zero()) stacked.set(r, cix, top);
        if (!bot.is_zero()) stacked.set(32 + r, cix, bot);
      }
    return kernel(stacked);
  };
  std::vector<FixedEntry> entries;
  auto push_block = [&](int gsign, const Rational& eig, int deg) {
    std::vector<Vec> vs = block(gsign, eig);
    if (vs.empty()) return;
    SubBasis sb = SubBasis::build(32, vs);
    for (const auto& v : vs)
      entries.push_back({v, gsign < 0, deg, fixed_name(sb, v, c.names, gsign < 0)});
  };
  push_block(1, Rational(1, 2), 1);
  push_block(-1, Rational(1, 2), 1);
  push_block(1, Rational(-1, 2), 3);
  push_block(-1, Rational(-1, 2), 3);
  if ((int)entries.size() != 32)
    throw std::runtime_error("e7 so(10,2): fixed subspace dimension is not 32");
  return transport_fixed(c.sys, entries, false, {Family::e7_so102, 0, 10, 2});
}

BuiltModel build_e7_sostar() {
  const E7Core& c = e7_core();
  // conjugate-linear algebra automorphism induced by e_i -> e_{i+3},
  // e_{i+3} -> -e_i (i = 1,2,3) on the base space
  Matrix g(32, 32);
  for (int col = 0; col < 32; ++col) {
    ExtR img = ExtR::unit(6);
    for (int i : MultiIndex(c.mi.masks[(size_t)col]).indices()) {
      ExtR factor(6);
      if (i <= 3)
        factor.add(MultiIndex::of({i + 3}), Rational(1));
      else
        factor.add(MultiIndex::of({i - 3}), Rational(-1));
      img = wedge(img, factor);
    }
    for (const auto& [m, v] : img.coeff) g.add_at(c.mi.at(m), col, v);
  }
  if (!(g * g == Matrix::identity(32)))
    throw std::runtime_error("e7 so*: twist does not square to the identity on the even part");
  std::vector<FixedEntry> entries;
  auto add_class = [&](int gsign) {
    std::vector<Vec> vs = involution_eigenspace(g, gsign);
    if (vs.empty()) return;
    SubBasis sb = SubBasis::build(32, vs);
    for (const auto& v : vs) {
      // degree from the wedge degree of the unit coordinate: 0,4 -> 1; 2,6 -> 3
      int up = -1;
      for (int pp = 0; pp < 32 && up < 0; ++pp)
        if (!v[(size_t)pp].is_zero()) up = pp;
      int wdeg = __builtin_popcount(c.mi.masks[(size_t)up]) % 4;
      entries.push_back({v, gsign < 0, wdeg == 0 ? 1 : 3,
                         fixed_name(sb, v, c.names, gsign < 0)});
    }
  };
  add_class(1);
  add_class(-1);
  if ((int)entries.size() != 32)
    throw std::runtime_error("e7 so*: fixed subspace dimension is not 32");
  std::stable_sort(entries.begin(), entries.end(),
                   [](const FixedEntry& a, const FixedEntry& b) { return a.deg < b.deg; });
  return transport_fixed(c.sys, entries, false, {Family::e7_sostar, 0, 0, 0});
}

BuiltModel build_e8_nonsplit() {
  const E8Core& c = e8_core();
  const int p = 6;
  Matrix g(56, 56);
  for (int j = 0; j < 28; ++j) {
    uint32_t m = c.m2.masks[(size_t)j];
    int flips = __builtin_popcount(m & ~((1u << p) - 1));
    Rational s(flips & 1 ? -1 : 1);
    g.set(28 + j, j, s);
    g.set(j, 28 + j, s);
  }
  if (!(g * g == Matrix::identity(56)))
    throw std::runtime_error("e8 nonsplit: twist does not square to the identity");
  std::vector<FixedEntry> entries;
  std::vector<Vec> plus = involution_eigenspace(g, 1);
  std::vector<Vec> minus = involution_eigenspace(g, -1);
  SubBasis sbp = SubBasis::build(56, plus), sbm = SubBasis::build(56, minus);
  for (const auto& v : plus) entries.push_back({v, false, 1, fixed_name(sbp, v, c.names, false)});
  for (const auto& v : minus) entries.push_back({v, true, 3, fixed_name(sbm, v, c.names, true)});
  if ((int)entries.size() != 56)
    throw std::runtime_error("e8 nonsplit: fixed subspace dimension is not 56");
  return transport_fixed(c.sys, entries, true, {Family::e8_nonsplit, 0, 6, 2});
}

// ----------------------------------------------------------------- probes

Matrix e6_acting_matrix(MultiIndex I, MultiIndex J) {
  const E6Core& c = e6_core();
  Vec coeffs = c.tc.pair_coeffs(c.mi.at(I.bits), c.mi.at(J.bits));
  Matrix out(6, 6);
  for (size_t a = 0; a < c.nat.size(); ++a) {
    if (coeffs[a].is_zero()) continue;
    out = out + c.nat[a].scaled(coeffs[a]);
  }
  return out;
}

Matrix e8_acting_sl_matrix(MultiIndex I, MultiIndex J) {
  const E8Core& c = e8_core();
  Vec coeffs = c.tc.pair_coeffs(c.m2.at(I.bits), 28 + c.m2.at(J.bits));
  Matrix out(8, 8);
  for (int a = 0; a < 63; ++a) {
    if (coeffs[(size_t)a].is_zero()) continue;
    out = out + c.sl[(size_t)a].scaled(coeffs[(size_t)a]);
  }
  for (int k = 0; k < 70; ++k)
    if (!coeffs[(size_t)(63 + k)].is_zero())
      throw std::logic_error("e8_acting_sl_matrix: derivation has a wedge component");
  return out;
}

std::pair<int, int> e8_real_form_count_and_signature(int p) {
  if (p != 4 && p != 6 && p != 8)
    throw std::invalid_argument("e8_real_form_count_and_signature: p in {4,6,8}");
  uint32_t ip = ~((1u << p) - 1) & 0xffu;  // indices p+1..8
  int count = 0;
  for (uint32_t m : masks_of_degree(8, 4)) {
    if (!(m & 1u)) continue;  // sequences (1, i, j, k)
    if ((__builtin_popcount(m & ip) & 1) == 0) ++count;
  }
  int su_sign = 1 - (2 * p - 8) * (2 * p - 8);
  int sig = su_sign + (4 * count - 70);
  return {count, sig};
}

}  // namespace sts
