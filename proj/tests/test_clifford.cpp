#include <doctest.h>

#include "sts/clifford.hpp"

using namespace sts;

namespace {
using W = WPlusDual<Rational>;

std::vector<W> all_generators() {
  std::vector<W> g;
  for (int i = 1; i <= 6; ++i) g.push_back(W::basis_w(i));
  for (int i = 1; i <= 6; ++i) g.push_back(W::basis_f(i));
  return g;
}
}  // namespace

TEST_CASE("generators satisfy the Clifford relation on all basis pairs") {
  auto gens = all_generators();
  std::vector<DenseMat<Rational>> ops;
  for (const auto& v : gens) ops.push_back(clifford_generator(v));
  for (size_t a = 0; a < gens.size(); ++a)
    for (size_t b = 0; b < gens.size(); ++b) {
      DenseMat<Rational> anti = ops[a] * ops[b] + ops[b] * ops[a];
      Rational q = q_polar(gens[a], gens[b]);
      DenseMat<Rational> expect = DenseMat<Rational>::identity(64).scaled(q);
      CHECK(anti == expect);
    }
}

TEST_CASE("generator actions on basis forms") {
  // e_1 left-multiplies
  std::vector<Rational> one(64);
  one[0] = Rational(1);
  auto img = clifford_generator(W::basis_w(1)).apply(one);
  CHECK(img[(size_t)MultiIndex::of({1}).bits] == Rational(1));
  // e^1 contracts
  std::vector<Rational> e12(64);
  e12[(size_t)MultiIndex::of({1, 2}).bits] = Rational(1);
  auto img2 = clifford_generator(W::basis_f(1)).apply(e12);
  CHECK(img2[(size_t)MultiIndex::of({2}).bits] == Rational(1));
  // (e_1 + e^1)^2 = q(e_1 + e^1) id = id
  W v = W::basis_w(1);
  v.f[0] = Rational(1);
  DenseMat<Rational> op = clifford_generator(v);
  CHECK(op * op == DenseMat<Rational>::identity(64));
}

TEST_CASE("transposition symmetry of generators for the alternating form") {
  // b(op(s), t) = b(s, op(t)) for every generator
  auto gens = all_generators();
  for (const auto& v : gens) {
    DenseMat<Rational> op = clifford_generator(v);
    std::vector<ExtR> image((size_t)64, ExtR(6));
    for (uint32_t s = 0; s < 64; ++s) {
      std::vector<Rational> es(64);
      es[(size_t)s] = Rational(1);
      auto ops = op.apply(es);
      for (uint32_t m = 0; m < 64; ++m)
        if (!ops[(size_t)m].is_zero()) image[(size_t)s].add(MultiIndex(m), ops[(size_t)m]);
    }
    for (uint32_t s = 0; s < 64; ++s)
      for (uint32_t t = 0; t < 64; ++t) {
        ExtR xs = ExtR::basis(6, MultiIndex(s)), xt = ExtR::basis(6, MultiIndex(t));
        CHECK(ba_form(image[(size_t)s], xt) == ba_form(xs, image[(size_t)t]));
      }
  }
}

TEST_CASE("orthogonal generators act correctly on the natural module") {
  // sigma_{e^i, e_i}: e_i -> e_i, e^i -> -e^i, rest to zero
  DenseMat<Rational> nat = so_natural(W::basis_f(1), W::basis_w(1));
  for (int c = 0; c < 12; ++c)
    for (int r = 0; r < 12; ++r) {
      Rational expect;
      if (c == 0 && r == 0) expect = Rational(1);
      if (c == 6 && r == 6) expect = Rational(-1);
      CHECK(nat.at(r, c) == expect);
    }
  // sigma_{e_1, e_2} on e^1 gives e_2
  DenseMat<Rational> nat2 = so_natural(W::basis_w(1), W::basis_w(2));
  CHECK(nat2.at(1, 6) == Rational(1));  // column of e^1, row of e_2
}

TEST_CASE("the embedding into the even Clifford algebra is a Lie homomorphism") {
  auto gens = all_generators();
  // precompute embeddings of all ordered basis pairs
  std::vector<std::vector<DenseMat<Rational>>> emb(12, std::vector<DenseMat<Rational>>(12));
  std::vector<std::vector<DenseMat<Rational>>> nat(12, std::vector<DenseMat<Rational>>(12));
  for (int a = 0; a < 12; ++a)
    for (int b = 0; b < 12; ++b) {
      emb[(size_t)a][(size_t)b] = so_embedding(gens[(size_t)a], gens[(size_t)b]);
      nat[(size_t)a][(size_t)b] = so_natural(gens[(size_t)a], gens[(size_t)b]);
    }
  // the embedding is antisymmetric in its arguments, so pairs x < y and
  // z < w exhaust the basis quadruples
  for (int x = 0; x < 12; ++x)
    for (int y = x + 1; y < 12; ++y)
      for (int z = 0; z < 12; ++z)
        for (int w = z + 1; w < 12; ++w) {
          DenseMat<Rational> lhs = emb[(size_t)x][(size_t)y] * emb[(size_t)z][(size_t)w] -
                                   emb[(size_t)z][(size_t)w] * emb[(size_t)x][(size_t)y];
          // rhs: emb(sigma_{x,y}(z), w) + emb(z, sigma_{x,y}(w)) expanded over
          // the basis through bilinearity
          DenseMat<Rational> rhs(64, 64);
          for (int r = 0; r < 12; ++r) {
            Rational cz = nat[(size_t)x][(size_t)y].at(r, z);
            if (!cz.is_zero()) rhs = rhs + emb[(size_t)r][(size_t)w].scaled(cz);
            Rational cw = nat[(size_t)x][(size_t)y].at(r, w);
            if (!cw.is_zero()) rhs = rhs + emb[(size_t)z][(size_t)r].scaled(cw);
          }
          CHECK(lhs == rhs);
        }
}

TEST_CASE("half-spin action weights") {
  // sum of sigma_{e^i, e_i} acts by -3 on the unit and +3 on the top form
  DenseMat<Rational> sum(64, 64);
  for (int i = 1; i <= 6; ++i)
    sum = sum + so_embedding(WPlusDual<Rational>::basis_f(i), WPlusDual<Rational>::basis_w(i));
  SpinVector<Rational> unit = SpinVector<Rational>::basis(0, MultiIndex());
  SpinVector<Rational> top = SpinVector<Rational>::basis(0, MultiIndex::of({1, 2, 3, 4, 5, 6}));
  auto u2 = half_spin_action(sum, unit);
  auto t2 = half_spin_action(sum, top);
  for (size_t k = 0; k < 32; ++k) {
    CHECK(u2.coords[k] == unit.coords[k] * Rational(-3));
    CHECK(t2.coords[k] == top.coords[k] * Rational(3));
  }
  // sigma_{e^1, e_1} acts by +1/2 when the index is present
  DenseMat<Rational> s1 =
      so_embedding(WPlusDual<Rational>::basis_f(1), WPlusDual<Rational>::basis_w(1));
  SpinVector<Rational> e12 = SpinVector<Rational>::basis(0, MultiIndex::of({1, 2}));
  auto r = half_spin_action(s1, e12);
  for (size_t k = 0; k < 32; ++k) CHECK(r.coords[k] == e12.coords[k] * Rational(1, 2));
  // an odd operator flips parity and is rejected
  SpinVector<Rational> e23 = SpinVector<Rational>::basis(0, MultiIndex::of({2, 3}));
  CHECK_THROWS(half_spin_action(op_lmul<Rational>(1), e23));
}
