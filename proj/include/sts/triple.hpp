#pragma once

#include <array>
#include <optional>
#include <string>

#include "sts/lie.hpp"
#include "sts/linalg.hpp"
#include "sts/rng.hpp"

namespace sts {

// ------------------------------------------------------------------ labels

enum class Family {
  special,
  orthogonal,
  symplectic,
  unitarian,
  quaternionic,
  g2,
  f4,
  e6_split,
  e6_su33,
  e6_su51,
  e7_split,
  e7_so102,
  e7_sostar,
  e8_split,
  e8_nonsplit,
};

constexpr int kFamilyCount = 15;
const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);
bool family_is_parametric(Family f);

/// Tagged identifier of one of the classified families with its integer
/// parameters (n for one-parameter families, (p,q) for signature families).
struct ModelLabel {
  Family family = Family::symplectic;
  int n = 0;
  int p = 0, q = 0;

  std::string to_string() const;
  friend bool operator==(const ModelLabel& a, const ModelLabel& b) = default;
};

// ---------------------------------------------------------- sparse tensors

/// Square sparse matrix in compressed-column form; the value type of the
/// triple tensor slices d_{ij} and of derivation matrices.
struct SparseColMat {
  int n = 0;
  std::vector<int> colstart;                    // size n+1
  std::vector<std::pair<int, Rational>> ent;    // (row, value) column-major

  SparseColMat() = default;
  explicit SparseColMat(int dim) : n(dim), colstart((size_t)dim + 1, 0) {}

  /// Builds from per-column entry lists (rows strictly increasing).
  static SparseColMat from_columns(int dim,
                                   const std::vector<std::vector<std::pair<int, Rational>>>& cols);
  static SparseColMat from_matrix(const Matrix& m);

  size_t nnz() const { return ent.size(); }
  std::pair<int, int> col_range(int j) const {
    return {colstart[(size_t)j], colstart[(size_t)j + 1]};
  }
  bool is_zero() const { return ent.empty(); }

  Vec apply(const Vec& v) const;
  /// dense += c * (this applied to e_j)
  void axpy_col(int j, const Rational& c, Vec& dense) const;
  Vec col_dense(int j) const;
  SparseVec col_sparse(int j) const;

  /// Column-major flattening (index j*n + r), sorted.
  SparseVec flatten() const;
  static SparseColMat unflatten(int dim, const SparseVec& flat);

  Matrix to_matrix() const;
  SparseColMat scaled(const Rational& c) const;
  SparseColMat transpose() const;

  friend bool operator==(const SparseColMat& a, const SparseColMat& b) {
    return a.n == b.n && a.colstart == b.colstart && a.ent == b.ent;
  }
};

/// a*b as sparse matrices.
SparseColMat spmm(const SparseColMat& a, const SparseColMat& b);

// ------------------------------------------------------------ TripleSystem

/// Triple system with an alternating form: dimension n, Gram matrix of the
/// form, and the rank-4 structure tensor stored as the family of matrices
/// d_{ij} = [e_i, e_j, .] for i <= j (the product is symmetric in the first
/// two slots by construction of this representation).
class TripleSystem {
 public:
  TripleSystem() = default;

  static TripleSystem from_parts(ModelLabel label, BilinearForm omega,
                                 std::vector<SparseColMat> d_upper);

  int dim() const { return n_; }
  const ModelLabel& label() const { return label_; }
  const BilinearForm& omega() const { return omega_; }
  const Rational& omega_at(int i, int j) const { return omega_.gram.at(i, j); }

  long long pair_count() const { return (long long)n_ * (n_ + 1) / 2; }
  long long pair_id(int i, int j) const {  // i <= j
    return (long long)i * n_ - (long long)i * (i - 1) / 2 + (j - i);
  }
  const SparseColMat& d(int i, int j) const {
    return i <= j ? d_[(size_t)pair_id(i, j)] : d_[(size_t)pair_id(j, i)];
  }
  const std::vector<SparseColMat>& d_family() const { return d_; }

  /// [e_i, e_j, e_k] as a sparse column.
  SparseVec trip(int i, int j, int k) const { return d(i, j).col_sparse(k); }

 private:
  int n_ = 0;
  ModelLabel label_;
  BilinearForm omega_;
  std::vector<SparseColMat> d_;
};

// ------------------------------------------------------------- operations

/// Matrix of z -> [x, y, z] for arbitrary coordinate vectors x, y.
Matrix d_map(const TripleSystem& t, const Vec& x, const Vec& y);

struct CheckMode {
  enum class Kind { exhaustive, sampled };
  Kind kind = Kind::exhaustive;
  uint64_t seed = kDefaultSeed;
  long long count = 100000;

  static CheckMode exhaustive() { return {}; }
  static CheckMode sampled(uint64_t seed, long long count) {
    return {Kind::sampled, seed, count};
  }
};

struct AxiomViolation {
  std::string equation;       // which defining identity failed
  std::array<int, 5> at{};    // basis indices of the first counterexample
  int arity = 0;
};

struct AxiomReport {
  bool pass = false;
  std::string mode;
  uint64_t seed = 0;
  long long samples = 0;     // sampled quintuples evaluated
  long long checked = 0;     // deterministic identities evaluated
  std::optional<AxiomViolation> first;
  std::string summary() const;
};

/// Verifies the defining identities of a symplectic triple system. The
/// symmetry of the product in the first two slots holds by representation;
/// the remaining identities are evaluated with exact equality. Exhaustive
/// mode covers the derivation identity on all basis quintuples for n <= 14
/// and otherwise on all basis quadruples in its equivalent
/// commutator-of-d-operators form plus `count` seeded pseudo-random sparse
/// rational quintuples.
AxiomReport check_axioms(const TripleSystem& t, const CheckMode& mode);

/// Linear span of the d_{xy} operators: a basis (as a subset of the basis
/// pairs), expansions of every d_{ij} over it, and the bracket structure
/// constants. Bracket closure is verified; failure throws.
struct InderBasis {
  int dim = 0;
  std::vector<std::pair<int, int>> pivot_pairs;
  std::vector<SparseColMat> mats;                  // basis derivations
  std::vector<std::vector<Rational>> pair_coeff;   // per pair id (i<=j)
  LieAlgebra lie;                                  // brackets over this basis

  /// Whether a derivation matrix lies in the span.
  bool contains(const SparseColMat& m) const;

  std::vector<Matrix> basis_matrices() const;

 private:
  friend InderBasis inder_span(const TripleSystem& t);
  SparseEchelon ech{0};
};

InderBasis inder_span(const TripleSystem& t);

/// Scales the form and the product by +1/-1 (the alpha-shift at alpha = sign).
TripleSystem shift(const TripleSystem& t, int sign);

/// Transports the structure through an invertible map f (throws if singular):
/// the result T' satisfies (x|y)_T = (f x|f y)_{T'} and
/// f([x,y,z]_T) = [f x, f y, f z]_{T'}.
TripleSystem apply_isomorphism(const TripleSystem& t, const Matrix& f);

/// Exact test that f is an isomorphism from t onto t2.
bool is_isomorphism(const TripleSystem& t, const TripleSystem& t2, const Matrix& f);

/// Partition of the basis into degrees 1 and 3 of a Z/4-grading.
struct Z4Grading {
  std::vector<int> deg;  // per basis index, values in {1,3}

  std::vector<int> part(int d) const {
    std::vector<int> out;
    for (int i = 0; i < (int)deg.size(); ++i)
      if (deg[i] == d) out.push_back(i);
    return out;
  }
};

/// True iff the product and the form are compatible with the grading:
/// [T_a, T_b, T_c] lies in T_{a+b+c} and (T_a|T_b) = 0 unless a+b = 0 mod 4.
bool check_z4_grading(const TripleSystem& t, const Z4Grading& g);

/// The unique scalar a with d_{x,y}.z - d_{x,z}.y = a((x|z)y - (x|y)z + 2(y|z)x)
/// over all basis triples, for the given candidate form; throws when the
/// triples do not agree on a single scalar.
Rational calibrate_alpha(const BilinearForm& omega, const TripleSystem& t);
Rational calibrate_alpha(const TripleSystem& t);

}  // namespace sts
