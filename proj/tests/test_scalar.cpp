#include <doctest.h>
#include <gmp.h>

#include "sts/rng.hpp"
#include "sts/scalar.hpp"

using namespace sts;
using Vec = std::vector<Rational>;

namespace {

Rational rnd_rational(Lcg& rng) {
  long long num = (long long)rng.below(2001) - 1000;
  long long den = (long long)rng.below(50) + 1;
  return Rational(num, den);
}

// independent reference via plain GMP
std::string mpq_ref(const char* op, const Rational& a, const Rational& b) {
  mpq_t qa, qb, qc;
  mpq_inits(qa, qb, qc, nullptr);
  mpq_set_str(qa, a.to_string().c_str(), 10);
  mpq_set_str(qb, b.to_string().c_str(), 10);
  mpq_canonicalize(qa);
  mpq_canonicalize(qb);
  if (op[0] == '+') mpq_add(qc, qa, qb);
  if (op[0] == '-') mpq_sub(qc, qa, qb);
  if (op[0] == '*') mpq_mul(qc, qa, qb);
  if (op[0] == '/') mpq_div(qc, qa, qb);
  char* s = mpq_get_str(nullptr, 10, qc);
  std::string out(s);
  std::free(s);
  mpq_clears(qa, qb, qc, nullptr);
  if (out.find('/') == std::string::npos) out += "/1";
  return out;
}

}  // namespace

TEST_CASE("rational normalization and parsing") {
  CHECK(Rational(2, 4).to_string() == "1/2");
  CHECK(Rational(-3, 6).to_string() == "-1/2");
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational(0, 7).to_string() == "0/1");
  CHECK(Rational::from_string("12/-8").to_string() == "-3/2");
  CHECK(Rational::from_string("7").to_string() == "7/1");
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational::from_string("1/0"));
  CHECK(Rational(5, 3) == Rational::from_string("5/3"));
}

TEST_CASE("rational arithmetic matches a GMP reference") {
  Lcg rng(101);
  for (int t = 0; t < 3000; ++t) {
    Rational a = rnd_rational(rng), b = rnd_rational(rng);
    CHECK((a + b).to_string() == mpq_ref("+", a, b));
    CHECK((a - b).to_string() == mpq_ref("-", a, b));
    CHECK((a * b).to_string() == mpq_ref("*", a, b));
    if (!b.is_zero()) CHECK((a / b).to_string() == mpq_ref("/", a, b));
  }
}

TEST_CASE("rational promotion to arbitrary precision is exact") {
  Rational big(1);
  for (int i = 1; i <= 40; ++i) big *= Rational(i);  // 40!
  CHECK_FALSE(big.is_small());
  CHECK(big.to_string() ==
        "815915283247897734345611269596115894272000000000/1");
  Rational back = big;
  for (int i = 40; i >= 2; --i) back /= Rational(i);
  CHECK(back == Rational(1));
  CHECK(back.is_small());
  // mixed comparisons
  CHECK(big != Rational(1));
  CHECK(big > Rational(1));
  Rational p2 = Rational(1, 1) / big;
  CHECK((p2 * big).is_one());
}

TEST_CASE("arithmetic across the inline/big storage boundary") {
  // operands near the inline limit force promotions mid-computation;
  // everything is compared against the plain GMP reference
  Lcg rng(2024);
  std::vector<Rational> pool;
  for (int t = 0; t < 40; ++t) {
    long long big = (long long)(rng.next() | (1ULL << 61));
    long long den = (long long)rng.below(9) + 1;
    pool.push_back(Rational(rng.below(2) ? big : -big, den));
    pool.push_back(rnd_rational(rng));
  }
  for (int t = 0; t < 2000; ++t) {
    const Rational& a = pool[rng.below(pool.size())];
    const Rational& b = pool[rng.below(pool.size())];
    CHECK((a + b).to_string() == mpq_ref("+", a, b));
    CHECK((a * b).to_string() == mpq_ref("*", a, b));
    CHECK((a - b).to_string() == mpq_ref("-", a, b));
    if (!b.is_zero()) CHECK((a / b).to_string() == mpq_ref("/", a, b));
    // demotion: big minus itself is inline zero again
    Rational z = a * b - b * a;
    CHECK(z.is_zero());
    CHECK(z.is_small());
  }
  // a value that never fits inline keeps exact semantics under mixed ops
  Rational huge = Rational(1);
  for (int i = 0; i < 5; ++i) huge *= Rational((long long)1 << 62);
  CHECK_FALSE(huge.is_small());
  CHECK(huge / huge == Rational(1));
  CHECK((huge + Rational(1) - huge) == Rational(1));
  CHECK((huge + Rational(1) - huge).is_small());
}

TEST_CASE("rational ordering and sign") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-5) < Rational(-4));
  CHECK(Rational(-2, 7).sgn() == -1);
  CHECK(Rational().sgn() == 0);
  CHECK(Rational(3, 2).abs() == Rational(3, 2));
  CHECK(Rational(-3, 2).abs() == Rational(3, 2));
}

TEST_CASE("ring axioms hold on random triples of all scalar types") {
  Lcg rng(77);
  for (int t = 0; t < 400; ++t) {
    Rational a = rnd_rational(rng), b = rnd_rational(rng), c = rnd_rational(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    GaussianRational ga{a, b}, gb{b, c}, gc{c, a};
    CHECK((ga * gb) * gc == ga * (gb * gc));
    CHECK(ga * (gb + gc) == ga * gb + ga * gc);
    RationalQuaternion qa{a, b, c, a}, qb{c, a, b, b}, qc{b, c, a, c};
    CHECK((qa * qb) * qc == qa * (qb * qc));
  }
}

TEST_CASE("gaussian conjugation is an involutive ring automorphism") {
  Lcg rng(5);
  for (int t = 0; t < 300; ++t) {
    GaussianRational a{rnd_rational(rng), rnd_rational(rng)};
    GaussianRational b{rnd_rational(rng), rnd_rational(rng)};
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK(a.conj().conj() == a);
    CHECK(a.norm2().sgn() >= 0);
    if (a.norm2().is_zero()) CHECK(a.is_zero());
  }
}

TEST_CASE("quaternion conjugation reverses products and the norm is multiplicative") {
  CHECK(RationalQuaternion::i() * RationalQuaternion::j() == RationalQuaternion::k());
  CHECK(RationalQuaternion::j() * RationalQuaternion::i() == -RationalQuaternion::k());
  Lcg rng(13);
  for (int t = 0; t < 300; ++t) {
    RationalQuaternion a{rnd_rational(rng), rnd_rational(rng), rnd_rational(rng),
                         rnd_rational(rng)};
    RationalQuaternion b{rnd_rational(rng), rnd_rational(rng), rnd_rational(rng),
                         rnd_rational(rng)};
    CHECK((a * b).conj() == b.conj() * a.conj());
    CHECK((a * b).norm2() == a.norm2() * b.norm2());
  }
}

TEST_CASE("complex realification convention") {
  using G = GaussianRational;
  CHECK(realify_complex({G(1)}, 1) == Vec{Rational(1), Rational(0)});
  CHECK(realify_complex({G::i()}, 1) == Vec{Rational(0), Rational(1)});
  CHECK(realify_complex({G{Rational(2), Rational(3)}, G{Rational(-1), Rational(0)}}, 2) ==
        Vec{Rational(2), Rational(3), Rational(-1), Rational(0)});
  // multiplication by i becomes the 2x2 block [[0,-1],[1,0]]
  Lcg rng(3);
  for (int t = 0; t < 100; ++t) {
    std::vector<G> v = {{rnd_rational(rng), rnd_rational(rng)},
                        {rnd_rational(rng), rnd_rational(rng)}};
    std::vector<G> iv = {v[0].times_i(), v[1].times_i()};
    Vec r = realify_complex(v, 2), ri = realify_complex(iv, 2);
    for (int k = 0; k < 2; ++k) {
      CHECK(ri[(size_t)(2 * k)] == -r[(size_t)(2 * k + 1)]);
      CHECK(ri[(size_t)(2 * k + 1)] == r[(size_t)(2 * k)]);
    }
  }
}

TEST_CASE("quaternion realification convention") {
  using Q = RationalQuaternion;
  CHECK(realify_quaternion({Q(1)}, 1) ==
        Vec{Rational(1), Rational(0), Rational(0), Rational(0)});
  CHECK(realify_quaternion({Q::j()}, 1) ==
        Vec{Rational(0), Rational(0), Rational(1), Rational(0)});
  CHECK(realify_quaternion({Q::i() - Q::k()}, 1) ==
        Vec{Rational(0), Rational(1), Rational(0), Rational(-1)});
  // right multiplication by each unit acts by a fixed integer 4x4 block
  Lcg rng(9);
  for (Q u : {Q::i(), Q::j(), Q::k()}) {
    // block columns = images of the four units
    std::vector<Vec> block;
    for (Q e : {Q(1), Q::i(), Q::j(), Q::k()}) block.push_back(realify_quaternion({e * u}, 1));
    for (int t = 0; t < 50; ++t) {
      Q v{rnd_rational(rng), rnd_rational(rng), rnd_rational(rng), rnd_rational(rng)};
      Vec rv = realify_quaternion({v}, 1);
      Vec expect(4);
      for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) expect[(size_t)r] += block[(size_t)c][(size_t)r] * rv[(size_t)c];
      CHECK(realify_quaternion({v * u}, 1) == expect);
    }
  }
}
