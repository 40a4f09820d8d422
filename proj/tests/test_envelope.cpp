#include <doctest.h>

#include "sts/envelope.hpp"
#include "sts/models.hpp"

using namespace sts;

TEST_CASE("envelope of the smallest symplectic system") {
  TripleSystem t = build_symplectic(1).system;
  InderBasis ib = inder_span(t);
  Envelope env = build_envelope(t, ib);
  CHECK(env.dim() == 10);  // 3 + 3 + 4
  JacobiReport jr = check_jacobi(env.lie, CheckMode::exhaustive());
  CHECK(jr.pass);
  CHECK(jr.mode == "exhaustive");
  // all strictly increasing basis triples are visited
  CHECK(jr.checked == (long long)10 * 9 * 8 / 6);
  KillingReport kr = killing(env, t);
  // restriction to the sp2 block: kappa(x, y) = kappa_sp(x, y) + tr(xy) dim T,
  // so kappa(h, h) = 8 + 2 dim T and kappa(e, f) = 4 + dim T
  CHECK(kr.gram.gram.at(0, 0) == Rational(8 + 2 * t.dim()));
  CHECK(kr.gram.gram.at(1, 2) == Rational(4 + t.dim()));
  CHECK(kr.gram.gram.at(1, 1).is_zero());
  CHECK(kr.blocks_orthogonal);
  CHECK(kr.sign_odd == 0);
  CHECK(kr.odd_factorizes);
  CHECK(kr.rank == env.dim());
  // expected classification data
  ClassificationRow row = classification_row(t.label());
  CHECK(kr.sign_total == row.sign_g);
  REQUIRE(row.sign_inder.has_value());
  CHECK(kr.sign_inder == *row.sign_inder);
  CHECK(kr.sign_total - kr.sign_inder == 1);
}

TEST_CASE("envelope of the special system is a full linear algebra") {
  TripleSystem t = build_special(1).system;
  Envelope env = build_envelope(t);
  CHECK(env.dim() == 8);  // 3 + 1 + 4: the rank-two special linear algebra
  CHECK(check_jacobi(env.lie, CheckMode::exhaustive()).pass);
  KillingReport kr = killing(env, t);
  CHECK(kr.sign_total == 2);
  CHECK(kr.sign_odd == 0);
  CHECK(kr.rank == 8);
}

TEST_CASE("envelope of the cubic-form model has dimension fourteen") {
  TripleSystem t = build_g2().system;
  InderBasis ib = inder_span(t);
  Envelope env = build_envelope(t, ib);
  CHECK(ib.dim == 3);
  CHECK(env.dim() == 14);
  CHECK(check_jacobi(env.lie, CheckMode::exhaustive()).pass);
  KillingReport kr = killing(env, t);
  CHECK(kr.sign_total == 2);
  CHECK(kr.sign_inder == 1);
  CHECK(kr.sign_odd == 0);
  CHECK(kr.rank == 14);
}

TEST_CASE("the inder block of the Killing form is kappa_h plus twice the trace form") {
  for (const BuiltModel& m : {build_g2(), build_symplectic(2), build_special(2)}) {
    const TripleSystem& t = m.system;
    InderBasis ib = inder_span(t);
    Envelope env = build_envelope(t, ib);
    KillingReport kr = killing(env, t);
    const int h = ib.dim;
    // kappa_h from the bracket structure of the span itself
    std::vector<Matrix> ad((size_t)h, Matrix(h, h));
    for (int a = 0; a < h; ++a)
      for (int j = 0; j < h; ++j) {
        SparseVec b = ib.lie.bracket_of(a, j);
        for (const auto& [r, v] : b.nz) ad[(size_t)a].set((int)r, j, v);
      }
    for (int a = 0; a < h; ++a)
      for (int b = 0; b < h; ++b) {
        Rational kh = ad[(size_t)a].trace_product(ad[(size_t)b]);
        Rational tf = ib.mats[(size_t)a].to_matrix().trace_product(ib.mats[(size_t)b].to_matrix());
        CHECK(kr.gram.gram.at(env.inder_begin() + a, env.inder_begin() + b) ==
              kh + Rational(2) * tf);
      }
  }
}

TEST_CASE("a corrupted structure constant is caught by the Jacobi check") {
  TripleSystem t = build_symplectic(1).system;
  Envelope env = build_envelope(t);
  // negate one structure constant
  LieAlgebra broken = env.lie;
  for (auto& b : broken.bracket)
    if (!b.nz.empty()) {
      b.nz[0].second = -b.nz[0].second;
      break;
    }
  JacobiReport jr = check_jacobi(broken, CheckMode::exhaustive());
  CHECK_FALSE(jr.pass);
  CHECK(jr.first.has_value());
}

TEST_CASE("sampled Jacobi reruns are reproducible") {
  TripleSystem t = build_orthogonal(2, 1).system;
  Envelope env = build_envelope(t);
  JacobiReport a = check_jacobi(env.lie, CheckMode::sampled(99, 2000));
  JacobiReport b = check_jacobi(env.lie, CheckMode::sampled(99, 2000));
  CHECK(a.pass);
  CHECK(a.summary() == b.summary());
}

TEST_CASE("classification registry dimensions") {
  ClassificationRow q = classification_row({Family::quaternionic, 1, 0, 0});
  CHECK(q.dim_t == 4);
  CHECK(q.dim_inder == 4);
  CHECK(q.dim_g == 15);
  CHECK(q.sign_g == -3);
  ClassificationRow u = classification_row({Family::unitarian, 0, 1, 0});
  CHECK(u.sign_g == 0);  // balanced rank-one case
  ClassificationRow o = classification_row({Family::orthogonal, 0, 2, 1});
  CHECK(o.dim_g == 21);
  CHECK(o.sign_g == 3);
  ClassificationRow e8 = classification_row({Family::e8_nonsplit, 0, 6, 2});
  CHECK(e8.dim_g == 248);
  CHECK(e8.sign_g == -24);
  CHECK(*e8.sign_inder == -25);
  CHECK(classification_table_labels().size() == 15);
}

TEST_CASE("orthogonal envelope matches the expected signature") {
  ModelLabel label{Family::orthogonal, 0, 2, 1};
  TripleSystem t = build_orthogonal(2, 1).system;
  InderBasis ib = inder_span(t);
  Envelope env = build_envelope(t, ib);
  ClassificationRow row = classification_row(label);
  CHECK(ib.dim == row.dim_inder);
  CHECK(env.dim() == row.dim_g);
  KillingReport kr = killing(env, t);
  CHECK(kr.sign_total == row.sign_g);
  CHECK(kr.sign_odd == 0);
  CHECK(kr.odd_factorizes);
  CHECK(kr.rank == env.dim());
}
