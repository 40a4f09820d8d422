#include "sts/linalg.hpp"

#include <algorithm>

namespace sts {

// ---------------------------------------------------------------- SparseVec

void SparseVec::scale(const Rational& c) {
  if (c.is_zero()) {
    nz.clear();
    return;
  }
  for (auto& e : nz) e.second *= c;
}

void SparseVec::axpy(const Rational& c, const SparseVec& other) {
  if (c.is_zero() || other.nz.empty()) return;
  std::vector<std::pair<long long, Rational>> out;
  out.reserve(nz.size() + other.nz.size());
  size_t i = 0, j = 0;
  while (i < nz.size() || j < other.nz.size()) {
    if (j == other.nz.size() || (i < nz.size() && nz[i].first < other.nz[j].first)) {
      out.push_back(std::move(nz[i++]));
    } else if (i == nz.size() || other.nz[j].first < nz[i].first) {
      out.emplace_back(other.nz[j].first, c * other.nz[j].second);
      if (out.back().second.is_zero()) out.pop_back();
      ++j;
    } else {
      Rational v = nz[i].second + c * other.nz[j].second;
      if (!v.is_zero()) out.emplace_back(nz[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  nz = std::move(out);
}

Vec SparseVec::to_dense(long long width) const {
  Vec v((size_t)width);
  for (const auto& e : nz) v[(size_t)e.first] = e.second;
  return v;
}

SparseVec SparseVec::from_dense(const Vec& v) {
  SparseVec s;
  for (long long i = 0; i < (long long)v.size(); ++i)
    if (!v[(size_t)i].is_zero()) s.nz.emplace_back(i, v[(size_t)i]);
  return s;
}

// ------------------------------------------------------------------- Matrix

namespace {
const Rational kZero;
constexpr int kDenseColumnLimit = 64;
}  // namespace

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), dense_(cols < kDenseColumnLimit) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative shape");
  if (dense_) d_.assign((size_t)rows * cols, Rational());
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, Rational(1));
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  int r = (int)rows.size();
  int c = r == 0 ? 0 : (int)rows[0].size();
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if ((int)rows[i].size() != c) throw std::invalid_argument("Matrix: ragged rows");
    for (int j = 0; j < c; ++j)
      if (!rows[i][j].is_zero()) m.set(i, j, rows[i][j]);
  }
  return m;
}

const Rational& Matrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("Matrix::at");
  if (dense_) return d_[(size_t)r * cols_ + c];
  auto it = s_.find({r, c});
  return it == s_.end() ? kZero : it->second;
}

void Matrix::set(int r, int c, const Rational& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("Matrix::set");
  if (dense_) {
    d_[(size_t)r * cols_ + c] = v;
  } else if (v.is_zero()) {
    s_.erase({r, c});
  } else {
    s_[{r, c}] = v;
  }
}

void Matrix::add_at(int r, int c, const Rational& v) {
  if (v.is_zero()) return;
  if (dense_) {
    d_[(size_t)r * cols_ + c] += v;
  } else {
    auto [it, fresh] = s_.try_emplace({r, c}, v);
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) s_.erase(it);
    }
  }
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for_each_nonzero([&](int r, int c, const Rational& v) { t.set(c, r, v); });
  return t;
}

void Matrix::for_each_nonzero(
    const std::function<void(int, int, const Rational&)>& f) const {
  if (dense_) {
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) {
        const Rational& v = d_[(size_t)r * cols_ + c];
        if (!v.is_zero()) f(r, c, v);
      }
  } else {
    for (const auto& [rc, v] : s_) f(rc.first, rc.second, v);
  }
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch");
  Matrix r(rows_, o.cols_);
  for_each_nonzero([&](int i, int k, const Rational& v) {
    for (int j = 0; j < o.cols_; ++j) {
      const Rational& w = o.at(k, j);
      if (!w.is_zero()) r.add_at(i, j, v * w);
    }
  });
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("Matrix: shape mismatch");
  Matrix r = *this;
  o.for_each_nonzero([&](int i, int j, const Rational& v) { r.add_at(i, j, v); });
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("Matrix: shape mismatch");
  Matrix r = *this;
  o.for_each_nonzero([&](int i, int j, const Rational& v) { r.add_at(i, j, -v); });
  return r;
}

Matrix Matrix::scaled(const Rational& c) const {
  Matrix r(rows_, cols_);
  if (c.is_zero()) return r;
  for_each_nonzero([&](int i, int j, const Rational& v) { r.set(i, j, v * c); });
  return r;
}

Vec Matrix::apply(const Vec& v) const {
  if ((int)v.size() != cols_) throw std::invalid_argument("Matrix::apply: size");
  Vec r((size_t)rows_);
  for_each_nonzero([&](int i, int j, const Rational& a) {
    if (!v[(size_t)j].is_zero()) r[(size_t)i] += a * v[(size_t)j];
  });
  return r;
}

Rational Matrix::trace() const {
  Rational t;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
  return t;
}

Rational Matrix::trace_product(const Matrix& o) const {
  if (cols_ != o.rows_ || rows_ != o.cols_)
    throw std::invalid_argument("Matrix::trace_product: shape");
  Rational t;
  for_each_nonzero([&](int i, int k, const Rational& v) {
    const Rational& w = o.at(k, i);
    if (!w.is_zero()) t += v * w;
  });
  return t;
}

bool Matrix::is_zero() const {
  bool z = true;
  for_each_nonzero([&](int, int, const Rational&) { z = false; });
  return z;
}

std::vector<Vec> Matrix::dense_rows() const {
  std::vector<Vec> rows((size_t)rows_, Vec((size_t)cols_));
  for_each_nonzero([&](int i, int j, const Rational& v) { rows[(size_t)i][(size_t)j] = v; });
  return rows;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  bool eq = true;
  a.for_each_nonzero([&](int i, int j, const Rational& v) {
    if (!(b.at(i, j) == v)) eq = false;
  });
  b.for_each_nonzero([&](int i, int j, const Rational& v) {
    if (!(a.at(i, j) == v)) eq = false;
  });
  return eq;
}

// ------------------------------------------------------------- BilinearForm

BilinearForm::BilinearForm(Matrix g, Sym t) : dim(g.rows()), gram(std::move(g)), tag(t) {
  if (gram.rows() != gram.cols()) throw std::invalid_argument("BilinearForm: not square");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j <= i; ++j) {
      const Rational& a = gram.at(i, j);
      const Rational& b = gram.at(j, i);
      if (tag == Sym::symmetric ? !(a == b) : !(a == -b))
        throw std::invalid_argument("BilinearForm: gram does not match symmetry tag");
    }
}

Rational BilinearForm::eval(const Vec& x, const Vec& y) const {
  Vec gy = gram.apply(y);
  Rational t;
  for (int i = 0; i < dim; ++i)
    if (!x[(size_t)i].is_zero() && !gy[(size_t)i].is_zero()) t += x[(size_t)i] * gy[(size_t)i];
  return t;
}

// ---------------------------------------------------------------- signature

std::pair<int, int> signature_rank(const BilinearForm& b) {
  if (b.tag != BilinearForm::Sym::symmetric)
    throw std::invalid_argument("signature: form must be symmetric");
  int n = b.dim;
  std::vector<Vec> m = b.gram.dense_rows();
  int pos = 0, neg = 0;
  int k = 0;
  auto swap_sym = [&](int i, int j) {
    if (i == j) return;
    std::swap(m[(size_t)i], m[(size_t)j]);
    for (int r = 0; r < n; ++r) std::swap(m[(size_t)r][(size_t)i], m[(size_t)r][(size_t)j]);
  };
  while (k < n) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!m[(size_t)i][(size_t)i].is_zero()) {
        piv = i;
        break;
      }
    if (piv >= 0) {
      swap_sym(k, piv);
      const Rational p = m[(size_t)k][(size_t)k];
      (p.sgn() > 0 ? pos : neg) += 1;
      for (int i = k + 1; i < n; ++i) {
        if (m[(size_t)i][(size_t)k].is_zero()) continue;
        Rational f = m[(size_t)i][(size_t)k] / p;
        for (int j = k; j < n; ++j) m[(size_t)i][(size_t)j] -= f * m[(size_t)k][(size_t)j];
        for (int j = k; j < n; ++j) m[(size_t)j][(size_t)i] -= f * m[(size_t)j][(size_t)k];
      }
      ++k;
      continue;
    }
    // all trailing diagonal entries vanish: look for a hyperbolic pair
    int hi = -1, hj = -1;
    for (int i = k; i < n && hi < 0; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!m[(size_t)i][(size_t)j].is_zero()) {
          hi = i;
          hj = j;
          break;
        }
    if (hi < 0) break;  // trailing block is zero: radical
    swap_sym(k, hi);
    swap_sym(k + 1, hj == k ? hi : hj);
    const Rational c = m[(size_t)k][(size_t)k + 1];
    pos += 1;
    neg += 1;
    for (int i = k + 2; i < n; ++i) {
      Rational fk = m[(size_t)i][(size_t)k + 1] / c;  // coefficient against row k
      Rational fl = m[(size_t)i][(size_t)k] / c;      // coefficient against row k+1
      if (fk.is_zero() && fl.is_zero()) continue;
      for (int j = k; j < n; ++j)
        m[(size_t)i][(size_t)j] -= fk * m[(size_t)k][(size_t)j] + fl * m[(size_t)k + 1][(size_t)j];
      for (int j = k; j < n; ++j)
        m[(size_t)j][(size_t)i] -= fk * m[(size_t)j][(size_t)k] + fl * m[(size_t)j][(size_t)k + 1];
    }
    k += 2;
  }
  return {pos - neg, pos + neg};
}

int signature(const BilinearForm& b) { return signature_rank(b).first; }

// ------------------------------------------------------------------ kernels

namespace {

// Row echelon of dense rows; returns pivot column per row, -1 rows removed.
std::vector<int> row_echelon(std::vector<Vec>& rows, int cols) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < (int)rows.size(); ++c) {
    int sel = -1;
    for (int i = r; i < (int)rows.size(); ++i)
      if (!rows[(size_t)i][(size_t)c].is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[(size_t)r], rows[(size_t)sel]);
    Rational inv = rows[(size_t)r][(size_t)c].reciprocal();
    for (int j = c; j < cols; ++j) rows[(size_t)r][(size_t)j] *= inv;
    for (int i = 0; i < (int)rows.size(); ++i) {
      if (i == r) continue;
      const Rational f = rows[(size_t)i][(size_t)c];
      if (f.is_zero()) continue;
      for (int j = c; j < cols; ++j)
        rows[(size_t)i][(size_t)j] -= f * rows[(size_t)r][(size_t)j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize((size_t)r);
  return pivots;
}

}  // namespace

std::vector<Vec> kernel(const Matrix& m) {
  int n = m.cols();
  std::vector<Vec> rows = m.dense_rows();
  std::vector<int> pivots = row_echelon(rows, n);
  std::vector<bool> is_pivot((size_t)n, false);
  for (int c : pivots) is_pivot[(size_t)c] = true;
  std::vector<Vec> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[(size_t)c]) continue;
    Vec x((size_t)n);
    x[(size_t)c] = Rational(1);
    for (int r = 0; r < (int)pivots.size(); ++r)
      x[(size_t)pivots[(size_t)r]] = -rows[(size_t)r][(size_t)c];
    basis.push_back(std::move(x));
  }
  return basis;
}

int rank(const Matrix& m) {
  std::vector<Vec> rows = m.dense_rows();
  return (int)row_echelon(rows, m.cols()).size();
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  if ((int)b.size() != a.rows()) throw std::invalid_argument("solve: size mismatch");
  int n = a.cols();
  std::vector<Vec> rows = a.dense_rows();
  for (int i = 0; i < a.rows(); ++i) rows[(size_t)i].push_back(b[(size_t)i]);
  std::vector<int> pivots = row_echelon(rows, n + 1);
  Vec x((size_t)n);
  for (int r = 0; r < (int)pivots.size(); ++r) {
    if (pivots[(size_t)r] == n) return std::nullopt;  // inconsistent
    x[(size_t)pivots[(size_t)r]] = rows[(size_t)r][(size_t)n];
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  int n = m.rows();
  std::vector<Vec> rows = m.dense_rows();
  for (int i = 0; i < n; ++i) {
    rows[(size_t)i].resize((size_t)(2 * n));
    rows[(size_t)i][(size_t)(n + i)] = Rational(1);
  }
  std::vector<int> pivots = row_echelon(rows, 2 * n);
  if ((int)pivots.size() < n || pivots[(size_t)n - 1] >= n)
    throw std::domain_error("inverse: singular matrix");
  Matrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!rows[(size_t)i][(size_t)(n + j)].is_zero())
        r.set(i, j, rows[(size_t)i][(size_t)(n + j)]);
  return r;
}

// ------------------------------------------------------------ SparseEchelon

SparseVec SparseEchelon::reduce(const SparseVec& v, std::vector<Rational>* coeffs) const {
  SparseVec work = v;
  std::vector<std::pair<int, Rational>> used;  // (row, coefficient)
  size_t pos = 0;
  while (pos < work.nz.size()) {
    long long idx = work.nz[pos].first;
    auto it = pivot_of_.find(idx);
    if (it == pivot_of_.end()) {
      ++pos;
      continue;
    }
    Rational c = work.nz[pos].second;  // pivot of row is 1
    work.axpy(-c, rows_[(size_t)it->second]);
    if (coeffs) used.emplace_back(it->second, std::move(c));
    // the entry at idx is now gone; pos keeps pointing at the next index
  }
  if (coeffs) {
    coeffs->assign((size_t)inserted_, Rational());
    for (const auto& [row, c] : used) {
      const auto& cmb = combo_[(size_t)row];
      for (size_t t = 0; t < cmb.size(); ++t)
        if (!cmb[t].is_zero()) (*coeffs)[t] += c * cmb[t];
    }
  }
  return work;
}

bool SparseEchelon::insert(const SparseVec& v, std::vector<Rational>* coeffs) {
  std::vector<Rational> local;
  SparseVec residual = reduce(v, &local);
  int my_index = inserted_;
  ++inserted_;
  local.resize((size_t)inserted_, Rational());
  if (residual.empty()) {
    if (coeffs) *coeffs = std::move(local);
    return false;
  }
  // residual = v - sum local[t] * inserted[t]; normalize pivot to 1
  Rational lead = residual.lead_value();
  Rational inv = lead.reciprocal();
  residual.scale(inv);
  std::vector<Rational> cmb((size_t)inserted_, Rational());
  cmb[(size_t)my_index] = inv;
  for (size_t t = 0; t + 1 < (size_t)inserted_; ++t)
    if (!local[t].is_zero()) cmb[t] = -inv * local[t];
  pivot_of_[residual.lead_index()] = (int)rows_.size();
  rows_.push_back(std::move(residual));
  combo_.push_back(std::move(cmb));
  if (coeffs) {
    // v itself: combination is the unit vector on its own slot
    coeffs->assign((size_t)inserted_, Rational());
    (*coeffs)[(size_t)my_index] = Rational(1);
  }
  return true;
}

std::vector<Vec> SparseEchelon::solution_basis() const {
  // rows are homogeneous constraints; width_ is assumed small enough to dense
  std::vector<std::pair<long long, int>> piv(pivot_of_.begin(), pivot_of_.end());
  std::sort(piv.begin(), piv.end());
  std::vector<bool> is_piv((size_t)width_, false);
  for (auto& [c, r] : piv) is_piv[(size_t)c] = true;
  std::vector<Vec> basis;
  for (long long f = 0; f < width_; ++f) {
    if (is_piv[(size_t)f]) continue;
    Vec x((size_t)width_);
    x[(size_t)f] = Rational(1);
    for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
      const SparseVec& row = rows_[(size_t)it->second];
      Rational acc;
      for (size_t t = 1; t < row.nz.size(); ++t) {
        const Rational& xv = x[(size_t)row.nz[t].first];
        if (!xv.is_zero()) acc += row.nz[t].second * xv;
      }
      x[(size_t)it->first] = -acc;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

// ----------------------------------------------- invariant bilinear forms

namespace {

struct PairIndexer {
  int n;
  bool with_diagonal;
  long long count() const {
    return with_diagonal ? (long long)n * (n + 1) / 2 : (long long)n * (n - 1) / 2;
  }
  // i < j (or i <= j with diagonal)
  long long id(int i, int j) const {
    if (with_diagonal)
      return (long long)i * n - (long long)i * (i - 1) / 2 + (j - i);
    return (long long)i * n - (long long)i * (i + 1) / 2 + (j - i - 1);
  }
};

}  // namespace

InvariantFormSpace invariant_bilinear_space(const std::vector<Matrix>& rep,
                                            BilinearForm::Sym tag) {
  if (rep.empty()) throw std::invalid_argument("invariant_bilinear_space: empty rep");
  int n = rep[0].rows();
  for (const auto& d : rep)
    if (d.rows() != n || d.cols() != n)
      throw std::invalid_argument("invariant_bilinear_space: shapes differ");
  bool sym = tag == BilinearForm::Sym::symmetric;
  PairIndexer ux{n, sym};
  long long unknowns = ux.count();

  // entry (a,b) of B expressed over unknowns, with the symmetry sign
  auto entry = [&](int a, int b) -> std::pair<long long, int> {
    if (a == b) {
      if (!sym) return {-1, 0};
      return {ux.id(a, a), 1};
    }
    if (a < b) return {ux.id(a, b), 1};
    return {ux.id(b, a), sym ? 1 : -1};
  };

  // order the constraints sparsest-first
  std::vector<int> order((size_t)rep.size());
  for (size_t t = 0; t < rep.size(); ++t) order[t] = (int)t;
  std::vector<long long> nnz(rep.size(), 0);
  for (size_t t = 0; t < rep.size(); ++t)
    rep[t].for_each_nonzero([&](int, int, const Rational&) { ++nnz[t]; });
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return nnz[(size_t)a] < nnz[(size_t)b]; });

  SparseEchelon ech(unknowns);

  auto check_direct = [&](const Matrix& d, const std::vector<Matrix>& cand) {
    for (const auto& b : cand) {
      Matrix c = d.transpose() * b + b * d;
      if (!c.is_zero()) return false;
    }
    return true;
  };

  auto extract = [&]() {
    std::vector<Vec> xs = ech.solution_basis();
    std::vector<Matrix> mats;
    for (const auto& x : xs) {
      Matrix b(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = (sym ? i : i + 1); j < n; ++j) {
          const Rational& v = x[(size_t)ux.id(i, j)];
          if (v.is_zero()) continue;
          b.set(i, j, v);
          if (i != j) b.set(j, i, sym ? v : -v);
        }
      mats.push_back(std::move(b));
    }
    return mats;
  };

  std::vector<Matrix> current;  // candidate solution basis once small
  bool have_candidate = false;
  for (size_t t = 0; t < rep.size(); ++t) {
    const Matrix& d = rep[(size_t)order[t]];
    if (have_candidate && check_direct(d, current)) continue;
    have_candidate = false;
    // columns of d, sparse
    std::vector<std::vector<std::pair<int, Rational>>> col((size_t)n);
    d.for_each_nonzero([&](int r, int c, const Rational& v) {
      col[(size_t)c].emplace_back(r, v);
    });
    // constraint rows: (d^T B + B d)_{ij} = sum_k d_ki B_kj + B_ik d_kj
    for (int i = 0; i < n; ++i) {
      for (int j = (sym ? i : i + 1); j < n; ++j) {
        std::map<long long, Rational> eq;
        for (const auto& [k, v] : col[(size_t)i]) {
          auto [u, s] = entry(k, j);
          if (u >= 0) {
            Rational add = s < 0 ? -v : v;
            auto [it, fresh] = eq.try_emplace(u, add);
            if (!fresh) it->second += add;
          }
        }
        for (const auto& [k, v] : col[(size_t)j]) {
          auto [u, s] = entry(i, k);
          if (u >= 0) {
            Rational add = s < 0 ? -v : v;
            auto [it, fresh] = eq.try_emplace(u, add);
            if (!fresh) it->second += add;
          }
        }
        SparseVec row;
        for (auto& [u, v] : eq)
          if (!v.is_zero()) row.nz.emplace_back(u, std::move(v));
        if (!row.empty()) ech.insert(row);
      }
    }
    if (unknowns - ech.rank() <= 2) {
      current = extract();
      have_candidate = true;
    }
  }
  InvariantFormSpace out;
  out.basis = extract();
  out.dim = (int)out.basis.size();
  return out;
}

}  // namespace sts
