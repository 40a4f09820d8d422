#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sts/rational.hpp"

namespace sts {

using Vec = std::vector<Rational>;

/// Sorted sparse vector, strictly increasing indices, no explicit zeros.
struct SparseVec {
  std::vector<std::pair<long long, Rational>> nz;

  bool empty() const { return nz.empty(); }
  long long lead_index() const { return nz.front().first; }
  const Rational& lead_value() const { return nz.front().second; }
  void scale(const Rational& c);
  /// this += c * other (merge; drops cancelled entries)
  void axpy(const Rational& c, const SparseVec& other);
  Vec to_dense(long long width) const;
  static SparseVec from_dense(const Vec& v);

  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.nz == b.nz; }
};

/// Simple dense matrix over an arbitrary exact scalar; used for operator
/// algebra at fixed small sizes (Clifford operators, realified involutions).
template <class S>
struct DenseMat {
  int rows = 0, cols = 0;
  std::vector<S> a;

  DenseMat() = default;
  DenseMat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
  static DenseMat identity(int n) {
    DenseMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = S(1);
    return m;
  }
  S& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const S& at(int i, int j) const { return a[(size_t)i * cols + j]; }

  DenseMat operator*(const DenseMat& o) const {
    if (cols != o.rows) throw std::invalid_argument("DenseMat: shape mismatch");
    DenseMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const S& v = at(i, k);
        if (v.is_zero()) continue;
        for (int j = 0; j < o.cols; ++j) {
          const S& w = o.at(k, j);
          if (!w.is_zero()) r.at(i, j) += v * w;
        }
      }
    return r;
  }
  DenseMat operator+(const DenseMat& o) const {
    DenseMat r(rows, cols);
    for (size_t t = 0; t < a.size(); ++t) r.a[t] = a[t] + o.a[t];
    return r;
  }
  DenseMat operator-(const DenseMat& o) const {
    DenseMat r(rows, cols);
    for (size_t t = 0; t < a.size(); ++t) r.a[t] = a[t] - o.a[t];
    return r;
  }
  DenseMat scaled(const S& c) const {
    DenseMat r(rows, cols);
    for (size_t t = 0; t < a.size(); ++t) r.a[t] = a[t] * c;
    return r;
  }
  std::vector<S> apply(const std::vector<S>& v) const {
    std::vector<S> r(rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
    return r;
  }
  bool is_zero() const {
    for (const auto& v : a)
      if (!v.is_zero()) return false;
    return true;
  }
  friend bool operator==(const DenseMat& x, const DenseMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

/// Rational matrix, stored dense below 64 columns and as a sorted coordinate
/// list at or above. Both representations agree entrywise under conversion.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0), dense_(true) {}
  Matrix(int rows, int cols);
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vec>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool stored_dense() const { return dense_; }

  const Rational& at(int r, int c) const;
  void set(int r, int c, const Rational& v);
  void add_at(int r, int c, const Rational& v);

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Rational& c) const;
  Vec apply(const Vec& v) const;
  Rational trace() const;
  /// tr(this * o), computed without forming the product.
  Rational trace_product(const Matrix& o) const;
  bool is_zero() const;

  /// Iterate nonzero entries in row-major order.
  void for_each_nonzero(const std::function<void(int, int, const Rational&)>& f) const;

  std::vector<Vec> dense_rows() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  int rows_, cols_;
  bool dense_;
  std::vector<Rational> d_;                     // row-major, when dense_
  std::map<std::pair<int, int>, Rational> s_;   // when !dense_
};

struct BilinearForm {
  enum class Sym { symmetric, alternating };
  int dim = 0;
  Matrix gram;
  Sym tag = Sym::symmetric;

  BilinearForm() = default;
  BilinearForm(Matrix g, Sym t);
  Rational eval(const Vec& x, const Vec& y) const;
};

/// Signature (#positive - #negative) of a symmetric form, by exact congruence
/// diagonalization; a zero pivot facing a nonzero off-diagonal entry is split
/// as a hyperbolic (+1,-1) pair. Degenerate forms are allowed.
int signature(const BilinearForm& b);
std::pair<int, int> signature_rank(const BilinearForm& b);

/// Basis of the null space {x : Mx = 0}; empty when M is injective.
std::vector<Vec> kernel(const Matrix& m);
int rank(const Matrix& m);
/// One solution of Ax = b, if any.
std::optional<Vec> solve(const Matrix& a, const Vec& b);
Matrix inverse(const Matrix& m);

/// Incremental row echelon over sparse vectors of a fixed width, tracking how
/// each reduced vector decomposes over the vectors that were inserted.
class SparseEchelon {
 public:
  explicit SparseEchelon(long long width) : width_(width) {}

  /// v = sum over inserted vectors + residual. Returns the residual; coeffs
  /// (optional) receives the combination over inserted vectors, indexed by
  /// insertion order.
  SparseVec reduce(const SparseVec& v, std::vector<Rational>* coeffs) const;

  /// Reduce and insert the residual when independent; returns true if v
  /// increased the rank.
  bool insert(const SparseVec& v, std::vector<Rational>* coeffs = nullptr);

  int rank() const { return (int)rows_.size(); }
  long long width() const { return width_; }
  int inserted_count() const { return inserted_; }
  bool contains(const SparseVec& v) const { return reduce(v, nullptr).empty(); }

  /// Free coordinates (no pivot) — a basis of the solution set of the
  /// homogeneous system whose equations are the inserted rows.
  std::vector<Vec> solution_basis() const;

 private:
  long long width_;
  int inserted_ = 0;
  std::vector<SparseVec> rows_;                  // pivot coefficient 1
  std::vector<std::vector<Rational>> combo_;     // rows_[r] over inserted vectors
  std::map<long long, int> pivot_of_;            // pivot index -> row
};

struct InvariantFormSpace {
  int dim = 0;
  std::vector<Matrix> basis;
};

/// Solution space of d^T B + B d = 0 for all d in rep, restricted to the
/// given symmetry class of B.
InvariantFormSpace invariant_bilinear_space(const std::vector<Matrix>& rep,
                                            BilinearForm::Sym tag);

}  // namespace sts
