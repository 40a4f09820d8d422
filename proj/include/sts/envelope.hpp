#pragma once

#include <optional>

#include "sts/lie.hpp"
#include "sts/triple.hpp"

namespace sts {

/// Standard enveloping Lie algebra of a triple system: the Z/2-graded
/// algebra with even part sp2 + inder(T) (two commuting ideals) and odd
/// part V (x) T, where [a(x)x, b(x)y] = (x|y) gamma_{a,b} + <a|b> d_{x,y}.
///
/// Basis layout: h, e, f (the sp2 triple with [h,e]=2e, [h,f]=-2f, [e,f]=h),
/// then the inder basis, then a1(x)x_i, then a2(x)x_i.
struct Envelope {
  LieAlgebra lie;
  int n = 0;          // dim T
  int inder_dim = 0;

  int dim() const { return 3 + inder_dim + 2 * n; }
  int sp_begin() const { return 0; }
  int inder_begin() const { return 3; }
  int odd_begin() const { return 3 + inder_dim; }
  /// 0 = sp block, 1 = inder block, 2 = odd block
  int block_of(int i) const { return i < 3 ? 0 : (i < 3 + inder_dim ? 1 : 2); }
};

Envelope build_envelope(const TripleSystem& t);
Envelope build_envelope(const TripleSystem& t, const InderBasis& ib);

struct JacobiReport {
  bool pass = false;
  std::string mode;
  uint64_t seed = 0;
  long long checked = 0;
  std::optional<std::array<int, 3>> first;
  std::string summary() const;
};

/// Jacobi identity check: exhaustive over basis triples up to dimension 52,
/// seeded random basis triples above (or always when the mode says sampled).
JacobiReport check_jacobi(const LieAlgebra& l, const CheckMode& mode);

struct KillingReport {
  BilinearForm gram;     // Killing form of the envelope
  int sign_total = 0;
  int sign_sp = 0;
  int sign_inder = 0;
  int sign_odd = 0;
  int rank = 0;
  bool blocks_orthogonal = false;  // sp/inder/odd mutually orthogonal
  bool odd_factorizes = false;     // kappa(a(x)x,b(x)y) = <a|b> eta(x,y), eta = c Omega
  Rational eta_ratio;              // the proportionality scalar c
};

KillingReport killing(const Envelope& env, const TripleSystem& t);

/// Expected classification data for one label: names, dimensions and Killing
/// signatures of the enveloping algebra and the inner derivation algebra.
struct ClassificationRow {
  ModelLabel label;
  std::string g_name;
  std::string inder_name;
  int dim_t = 0;
  int dim_inder = 0;
  int dim_g = 0;
  int sign_g = 0;
  std::optional<int> sign_inder;  // pinned only when inder is simple
  bool simple_inder = false;
};

ClassificationRow classification_row(const ModelLabel& label);

/// Representative labels covering all fifteen families.
std::vector<ModelLabel> classification_table_labels();

}  // namespace sts
