#include <doctest.h>

#include "sts/linalg.hpp"
#include "sts/rng.hpp"

using namespace sts;

namespace {

Rational rnd(Lcg& rng) {
  return Rational((long long)rng.below(11) - 5, (long long)rng.below(3) + 1);
}

Matrix random_matrix(Lcg& rng, int r, int c, int fill_percent) {
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (rng.below(100) < (uint64_t)fill_percent) m.set(i, j, rnd(rng));
  return m;
}

Matrix random_invertible(Lcg& rng, int n) {
  // unit lower x unit upper (always invertible)
  Matrix l = Matrix::identity(n), u = Matrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i > j && rng.below(2)) l.set(i, j, rnd(rng));
      if (i < j && rng.below(2)) u.set(i, j, rnd(rng));
    }
  return l * u;
}

Matrix random_symmetric(Lcg& rng, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (rng.below(100) < 70) {
        Rational v = rnd(rng);
        m.set(i, j, v);
        m.set(j, i, v);
      }
    }
  return m;
}

}  // namespace

TEST_CASE("dense and sparse matrix storage agree") {
  // same data below and above the storage threshold
  Lcg rng(42);
  Matrix small = random_matrix(rng, 8, 8, 40);
  CHECK(small.stored_dense());
  Matrix wide(8, 70);
  CHECK_FALSE(random_matrix(rng, 8, 70, 40).stored_dense());
  // embed small into a wide sparse matrix and compare entrywise operations
  Matrix sparse(8, 70);
  small.for_each_nonzero([&](int i, int j, const Rational& v) { sparse.set(i, j, v); });
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(sparse.at(i, j) == small.at(i, j));
  CHECK(sparse.transpose().transpose() == sparse);
  // product cross-check against the naive triple loop
  Matrix a = random_matrix(rng, 6, 9, 50);
  Matrix b = random_matrix(rng, 9, 7, 50);
  Matrix ab = a * b;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 7; ++j) {
      Rational acc;
      for (int k = 0; k < 9; ++k) acc += a.at(i, k) * b.at(k, j);
      CHECK(ab.at(i, j) == acc);
    }
  Matrix b2 = random_matrix(rng, 9, 6, 50);
  CHECK(a.trace_product(b2) == (a * b2).trace());
}

TEST_CASE("signature of standard forms") {
  CHECK(signature(BilinearForm(Matrix::identity(3), BilinearForm::Sym::symmetric)) == 3);
  Matrix hyp(2, 2);
  hyp.set(0, 1, Rational(1));
  hyp.set(1, 0, Rational(1));
  CHECK(signature(BilinearForm(hyp, BilinearForm::Sym::symmetric)) == 0);
  // Killing gram of the split three-dimensional simple algebra over the
  // basis (h, e, f): [[8,0,0],[0,0,4],[0,4,0]]
  Matrix k(3, 3);
  k.set(0, 0, Rational(8));
  k.set(1, 2, Rational(4));
  k.set(2, 1, Rational(4));
  CHECK(signature(BilinearForm(k, BilinearForm::Sym::symmetric)) == 1);
  // degenerate: radical contributes zero
  Matrix dg(3, 3);
  dg.set(0, 0, Rational(-2));
  auto [s, r] = signature_rank(BilinearForm(dg, BilinearForm::Sym::symmetric));
  CHECK(s == -1);
  CHECK(r == 1);
}

TEST_CASE("signature is a congruence invariant and additive on blocks") {
  Lcg rng(7);
  for (int t = 0; t < 60; ++t) {
    int n = 3 + (int)rng.below(4);
    Matrix b = random_symmetric(rng, n);
    Matrix p = random_invertible(rng, n);
    BilinearForm fb(b, BilinearForm::Sym::symmetric);
    BilinearForm fc(p.transpose() * b * p, BilinearForm::Sym::symmetric);
    CHECK(signature(fb) == signature(fc));
    // direct sum with a fixed block
    Matrix blk(2, 2);
    blk.set(0, 0, Rational(3));
    blk.set(1, 1, Rational(-5));
    Matrix sum(n + 2, n + 2);
    b.for_each_nonzero([&](int i, int j, const Rational& v) { sum.set(i, j, v); });
    sum.set(n, n, Rational(3));
    sum.set(n + 1, n + 1, Rational(-5));
    CHECK(signature(BilinearForm(sum, BilinearForm::Sym::symmetric)) == signature(fb) + 0);
  }
}

TEST_CASE("signature survives heavy coefficient growth") {
  // congruence by a product of unimodular factors makes intermediate
  // entries large enough to leave the inline integer range
  Lcg rng(4096);
  Matrix b = random_symmetric(rng, 12);
  int expected = signature(BilinearForm(b, BilinearForm::Sym::symmetric));
  Matrix p = Matrix::identity(12);
  for (int round = 0; round < 6; ++round) p = p * random_invertible(rng, 12);
  Matrix moved = p.transpose() * b * p;
  bool grew = false;
  moved.for_each_nonzero([&](int, int, const Rational& v) {
    if (!v.is_small()) grew = true;
    if (v.abs() > Rational((long long)1 << 40)) grew = true;
  });
  CHECK(grew);  // the stress is real
  CHECK(signature(BilinearForm(moved, BilinearForm::Sym::symmetric)) == expected);
}

TEST_CASE("invariant form solver agrees with a dense nullspace oracle") {
  Lcg rng(515);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + (int)rng.below(4);
    int reps = 1 + (int)rng.below(3);
    std::vector<Matrix> rep;
    for (int t = 0; t < reps; ++t) rep.push_back(random_matrix(rng, n, n, 40));
    for (auto tag : {BilinearForm::Sym::alternating, BilinearForm::Sym::symmetric}) {
      bool sym = tag == BilinearForm::Sym::symmetric;
      // oracle: stack the full constraint system densely and take its kernel
      std::vector<std::pair<int, int>> unknowns;
      for (int i = 0; i < n; ++i)
        for (int j = sym ? i : i + 1; j < n; ++j) unknowns.emplace_back(i, j);
      auto entry = [&](const std::pair<int, int>& u, int a, int b) -> Rational {
        if (a == u.first && b == u.second) return Rational(1);
        if (a == u.second && b == u.first) return Rational(sym ? 1 : -1);
        return Rational(0);
      };
      std::vector<Vec> rows;
      for (const Matrix& d : rep)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            Vec row(unknowns.size());
            for (size_t u = 0; u < unknowns.size(); ++u) {
              Rational acc;
              for (int k = 0; k < n; ++k) {
                acc += d.at(k, i) * entry(unknowns[u], k, j);
                acc += entry(unknowns[u], i, k) * d.at(k, j);
              }
              row[u] = acc;
            }
            rows.push_back(std::move(row));
          }
      Matrix constraint = rows.empty() ? Matrix(0, (int)unknowns.size())
                                       : Matrix::from_rows(rows);
      int oracle_dim = (int)kernel(constraint).size();
      auto space = invariant_bilinear_space(rep, tag);
      CHECK(space.dim == oracle_dim);
      for (const Matrix& bmat : space.basis)
        for (const Matrix& d : rep) CHECK((d.transpose() * bmat + bmat * d).is_zero());
    }
  }
}

TEST_CASE("kernels and rank-nullity") {
  CHECK(kernel(Matrix::identity(2)).empty());
  CHECK(kernel(Matrix(3, 3)).size() == 3);
  Lcg rng(19);
  for (int t = 0; t < 40; ++t) {
    int r = 2 + (int)rng.below(5), c = 2 + (int)rng.below(5);
    Matrix m = random_matrix(rng, r, c, 50);
    auto basis = kernel(m);
    CHECK(rank(m) + (int)basis.size() == c);
    for (const auto& x : basis) {
      Vec y = m.apply(x);
      for (const auto& v : y) CHECK(v.is_zero());
    }
  }
}

TEST_CASE("solve and inverse") {
  Lcg rng(23);
  for (int t = 0; t < 30; ++t) {
    int n = 2 + (int)rng.below(4);
    Matrix a = random_invertible(rng, n);
    Vec b;
    for (int i = 0; i < n; ++i) b.push_back(rnd(rng));
    auto x = solve(a, b);
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == b);
    Matrix ai = inverse(a);
    CHECK(a * ai == Matrix::identity(n));
  }
  Matrix sing(2, 2);
  sing.set(0, 0, Rational(1));
  CHECK_THROWS(inverse(sing));
}

TEST_CASE("sparse echelon tracks combinations over inserted vectors") {
  Lcg rng(31);
  SparseEchelon ech(12);
  std::vector<SparseVec> inserted;
  for (int t = 0; t < 25; ++t) {
    Vec v(12);
    for (int i = 0; i < 12; ++i)
      if (rng.below(3) == 0) v[(size_t)i] = rnd(rng);
    SparseVec sv = SparseVec::from_dense(v);
    std::vector<Rational> coeffs;
    SparseVec resid = ech.reduce(sv, &coeffs);
    // sv == sum coeffs[k] inserted[k] + resid
    SparseVec check = resid;
    for (size_t k = 0; k < coeffs.size(); ++k) check.axpy(coeffs[k], inserted[k]);
    CHECK(check == sv);
    ech.insert(sv);
    inserted.push_back(sv);
  }
  CHECK(ech.rank() <= 12);
}

TEST_CASE("invariant bilinear forms of simple representations") {
  // everything is invariant under the zero representation
  {
    std::vector<Matrix> rep = {Matrix(2, 2)};
    auto alt = invariant_bilinear_space(rep, BilinearForm::Sym::alternating);
    CHECK(alt.dim == 1);
    auto sym = invariant_bilinear_space(rep, BilinearForm::Sym::symmetric);
    CHECK(sym.dim == 3);
  }
  // diagonal constraint kills the diagonal unknowns
  {
    Matrix d(2, 2);
    d.set(0, 0, Rational(1));
    d.set(1, 1, Rational(-1));
    auto sym = invariant_bilinear_space({d}, BilinearForm::Sym::symmetric);
    CHECK(sym.dim == 1);  // spanned by the off-diagonal pair
    auto alt = invariant_bilinear_space({d}, BilinearForm::Sym::alternating);
    CHECK(alt.dim == 1);
  }
  // the identity yields d^T B + B d = 2B, so only B = 0
  {
    auto none = invariant_bilinear_space({Matrix::identity(3)}, BilinearForm::Sym::symmetric);
    CHECK(none.dim == 0);
  }
  // solutions returned actually satisfy the constraints
  {
    Matrix d(3, 3);
    d.set(0, 1, Rational(1));
    d.set(1, 2, Rational(2));
    auto space = invariant_bilinear_space({d}, BilinearForm::Sym::alternating);
    for (const auto& b : space.basis) {
      CHECK((d.transpose() * b + b * d).is_zero());
    }
  }
}
