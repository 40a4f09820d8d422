#pragma once

#include "sts/exterior.hpp"
#include "sts/triple.hpp"

namespace sts {

// ----------------------------------------------------------- binary forms

/// Homogeneous binary form of degree `deg` in X, Y; c[k] is the coefficient
/// of X^(deg-k) Y^k.
struct Poly2 {
  int deg = 0;
  Vec c;

  Poly2() = default;
  explicit Poly2(int d) : deg(d), c((size_t)d + 1) {}
  static Poly2 monomial(int d, int k, Rational coeff = Rational(1)) {
    Poly2 p(d);
    p.c[(size_t)k] = std::move(coeff);
    return p;
  }
  bool is_zero() const {
    for (const auto& v : c)
      if (!v.is_zero()) return false;
    return true;
  }
  Poly2 dx() const;
  Poly2 dy() const;
  Poly2 operator*(const Poly2& o) const;
  Poly2 operator+(const Poly2& o) const;
  Poly2 scaled(const Rational& r) const;
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.deg == b.deg && a.c == b.c; }
};

/// Classical transvection (f,g)_q of binary forms; errors when q exceeds
/// either degree.
Poly2 transvect(const Poly2& f, const Poly2& g, int q);

// -------------------------------------------------------------- subspaces

/// Basis of a subspace with exact coordinate extraction: an internal row
/// reduction records how the reduced rows combine the input vectors, so
/// coordinates of a subspace vector are read off pivot positions and mapped
/// back; vectors outside the span are rejected.
struct SubBasis {
  int ambient = 0;
  std::vector<Vec> vecs;            // the input basis
  std::vector<SparseVec> rref;      // reduced rows, unit pivots
  std::vector<long long> pivots;    // pivot position per reduced row
  std::vector<std::vector<Rational>> transform;  // rref[k] = sum transform[k][m] vecs[m]

  static SubBasis build(int ambient, std::vector<Vec> vs);
  int dim() const { return (int)vecs.size(); }
  /// Coordinates of v over the basis; throws when v lies outside the span.
  Vec coords(const Vec& v) const;
};

// ------------------------------------------------------------------ models

struct BuiltModel {
  TripleSystem system;
  Z4Grading grading;
  std::vector<std::string> basis_names;

  int find_basis(const std::string& name) const;
};

BuiltModel build_special(int n);
BuiltModel build_orthogonal(int p, int q);
BuiltModel build_symplectic(int n);
BuiltModel build_unitarian(int p, int q);
BuiltModel build_quaternionic(int n);
BuiltModel build_g2();
BuiltModel build_f4();
BuiltModel build_e6_split();
BuiltModel build_e7_split();
BuiltModel build_e8_split();
BuiltModel build_e6_nonsplit(int p);  // p = 3 or 5
BuiltModel build_e7_so102();
BuiltModel build_e7_sostar();
BuiltModel build_e8_nonsplit();

/// Dispatch on a label (validates parameters).
BuiltModel build_model(const ModelLabel& label);

/// The degree-1/degree-3 basis partition attached to a label's model.
Z4Grading z4_grading_for(const ModelLabel& label);

// ---------------------------------------------------------------- probes
// Direct access to a few internally-solved operators, used by the test
// suites to pin down the normalization of each construction.

/// Action on W (6x6) of the inner derivation d_{e_I, e_J} of the
/// third-exterior-power system on a six-dimensional space.
Matrix e6_acting_matrix(MultiIndex I, MultiIndex J);

/// sl part (8x8) of the inner derivation d_{e_I, e^J} of the 56-dimensional
/// system (I indexes a wedge pair, J a dual wedge pair).
Matrix e8_acting_sl_matrix(MultiIndex I, MultiIndex J);

/// Matrix on the third exterior power (20x20) of the conjugation used for
/// the non-split constructions with a rank-p positive hermitian block;
/// composed with coordinate conjugation it squares to +1 for p = 3, 5 and
/// to -1 for p = 4, 6.
Matrix e6_gamma_matrix(int p);

/// Matrix on the even half of the exterior algebra (32x32) implementing the
/// order-two twist of the spin model with a (10,2) form.
Matrix e7_gamma_so102();

/// Counts increasing sequences (1,i,j,k) in {1..8} whose intersection with
/// {p+1..8} has even size, and the resulting Killing signature of the fixed
/// real form of the wedge model, for p in {4,6,8}.
std::pair<int, int> e8_real_form_count_and_signature(int p);

}  // namespace sts
