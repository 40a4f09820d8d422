#include <doctest.h>

#include "sts/models.hpp"
#include "sts/rng.hpp"

using namespace sts;

namespace {
Poly2 rnd_poly(Lcg& rng, int deg) {
  Poly2 p(deg);
  for (int k = 0; k <= deg; ++k)
    p.c[(size_t)k] = Rational((long long)rng.below(9) - 4, (long long)rng.below(2) + 1);
  return p;
}
}  // namespace

TEST_CASE("transvection values") {
  Poly2 x3 = Poly2::monomial(3, 0), y3 = Poly2::monomial(3, 3);
  Poly2 v = transvect(x3, y3, 3);
  REQUIRE(v.deg == 0);
  CHECK(v.c[0] == Rational(1));
  // zeroth transvection is the product
  Lcg rng(3);
  for (int t = 0; t < 40; ++t) {
    Poly2 f = rnd_poly(rng, 3), g = rnd_poly(rng, 2);
    CHECK(transvect(f, g, 0) == f * g);
  }
  // odd transvections of an element with itself vanish
  for (int t = 0; t < 40; ++t) {
    Poly2 f = rnd_poly(rng, 3);
    CHECK(transvect(f, f, 1).is_zero());
    CHECK(transvect(f, f, 3).is_zero());
  }
  CHECK_THROWS(transvect(Poly2::monomial(2, 0), Poly2::monomial(3, 0), 3));
}

TEST_CASE("classical transvection identity on all cubic basis triples") {
  // 2(f,g)_3 h + (h,g)_3 f - (h,f)_3 g = 6(((f,h)_2,g)_1 - ((g,h)_2,f)_1)
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c) {
        Poly2 f = Poly2::monomial(3, a), g = Poly2::monomial(3, b), h = Poly2::monomial(3, c);
        Poly2 lhs = h.scaled(transvect(f, g, 3).c[0] * Rational(2)) +
                    f.scaled(transvect(h, g, 3).c[0]) + g.scaled(-transvect(h, f, 3).c[0]);
        Poly2 rhs =
            (transvect(transvect(f, h, 2), g, 1) +
             transvect(transvect(g, h, 2), f, 1).scaled(Rational(-1)))
                .scaled(Rational(6));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("special type") {
  BuiltModel m = build_special(1);
  const TripleSystem& t = m.system;
  CHECK(t.dim() == 2);
  // [w, f, w] = 3w when f(w) = 1
  SparseVec r = t.trip(0, 1, 0);
  REQUIRE(r.nz.size() == 1);
  CHECK(r.nz[0].first == 0);
  CHECK(r.nz[0].second == Rational(3));
  // (f|x) = f(x), (x|f) = -f(x)
  CHECK(t.omega_at(1, 0) == Rational(1));
  CHECK(t.omega_at(0, 1) == Rational(-1));
  CHECK(check_axioms(build_special(3).system, CheckMode::exhaustive()).pass);
  CHECK_THROWS(build_special(0));
}

TEST_CASE("orthogonal type") {
  BuiltModel m = build_orthogonal(3, 0);
  const TripleSystem& t = m.system;
  CHECK(t.dim() == 6);
  // (u (x) w1 | v (x) w1) = 1/2
  CHECK(t.omega_at(0, 3) == Rational(1, 2));
  CHECK(check_axioms(t, CheckMode::exhaustive()).pass);
  CHECK(check_axioms(build_orthogonal(2, 2).system, CheckMode::exhaustive()).pass);
  CHECK(check_z4_grading(t, m.grading));
  CHECK_THROWS(build_orthogonal(1, 1));
}

TEST_CASE("symplectic type") {
  BuiltModel m = build_symplectic(1);
  const TripleSystem& t = m.system;
  // [x, y, y] = y when (x|y) = 1
  SparseVec r = t.trip(0, 1, 1);
  REQUIRE(r.nz.size() == 1);
  CHECK(r.nz[0].first == 1);
  CHECK(r.nz[0].second == Rational(1));
  CHECK(check_axioms(build_symplectic(3).system, CheckMode::exhaustive()).pass);
}

TEST_CASE("unitarian type") {
  BuiltModel m = build_unitarian(1, 0);
  const TripleSystem& t = m.system;
  CHECK(t.dim() == 2);
  // [w, w, w] = 3i w: realified output (0, 3) over (w, i w)
  SparseVec r = t.trip(0, 0, 0);
  REQUIRE(r.nz.size() == 1);
  CHECK(r.nz[0].first == 1);
  CHECK(r.nz[0].second == Rational(3));
  // (w | i w) = -1
  CHECK(t.omega_at(0, 1) == Rational(-1));
  CHECK(check_axioms(t, CheckMode::exhaustive()).pass);
  CHECK(check_axioms(build_unitarian(1, 1).system, CheckMode::exhaustive()).pass);
  CHECK(check_axioms(build_unitarian(2, 1).system, CheckMode::exhaustive()).pass);
  // inder of the (1,1) form is the full unitary algebra, dimension 4
  CHECK(inder_span(build_unitarian(1, 1).system).dim == 4);
  CHECK(check_z4_grading(t, m.grading));
}

TEST_CASE("quaternionic type") {
  BuiltModel m = build_quaternionic(1);
  const TripleSystem& t = m.system;
  CHECK(t.dim() == 4);
  // [w, w, w] = 3 w i over the basis (w, wi, wj, wk)
  SparseVec r = t.trip(0, 0, 0);
  REQUIRE(r.nz.size() == 1);
  CHECK(r.nz[0].first == 1);
  CHECK(r.nz[0].second == Rational(3));
  // (w | w i) = -1
  CHECK(t.omega_at(0, 1) == Rational(-1));
  CHECK(check_axioms(t, CheckMode::exhaustive()).pass);
  CHECK(check_axioms(build_quaternionic(2).system, CheckMode::exhaustive()).pass);
  CHECK(inder_span(t).dim == 4);  // su_2 + so*_2
  CHECK(check_z4_grading(t, m.grading));
}

TEST_CASE("the cubic-form model") {
  BuiltModel m = build_g2();
  const TripleSystem& t = m.system;
  CHECK(t.dim() == 4);
  CHECK(t.omega_at(m.find_basis("X^3"), m.find_basis("Y^3")) == Rational(1));
  CHECK(check_axioms(t, CheckMode::exhaustive()).pass);
  CHECK(inder_span(t).dim == 3);
  CHECK(check_z4_grading(t, m.grading));
  // the product needs the factor 6: without it the calibration scalar is 1/6
  {
    const int dim = 4;
    std::vector<SparseColMat> d;
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) {
        std::vector<std::vector<std::pair<int, Rational>>> cols((size_t)dim);
        Poly2 fg2 = transvect(Poly2::monomial(3, a), Poly2::monomial(3, b), 2);
        for (int c = 0; c < dim; ++c) {
          Poly2 out = transvect(fg2, Poly2::monomial(3, c), 1);
          for (int k = 0; k < dim; ++k)
            if (!out.c[(size_t)k].is_zero()) cols[(size_t)c].emplace_back(k, out.c[(size_t)k]);
        }
        d.push_back(SparseColMat::from_columns(dim, cols));
      }
    TripleSystem unnormalized =
        TripleSystem::from_parts(t.label(), t.omega(), std::move(d));
    CHECK(calibrate_alpha(unnormalized) == Rational(1, 6));
  }
  CHECK(calibrate_alpha(t) == Rational(1));
}

TEST_CASE("classical labels of every size pass the grading check") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(check_z4_grading(build_special(n).system, build_special(n).grading));
    CHECK(check_z4_grading(build_symplectic(n).system, build_symplectic(n).grading));
    CHECK(check_z4_grading(build_quaternionic(n).system, build_quaternionic(n).grading));
  }
  CHECK(check_z4_grading(build_unitarian(2, 2).system, build_unitarian(2, 2).grading));
  CHECK(check_z4_grading(build_orthogonal(0, 3).system, build_orthogonal(0, 3).grading));
}
