#include "sts/rational.hpp"

#include <cstdlib>
#include <limits>
#include <ostream>

namespace sts {

namespace {

using u128 = unsigned __int128;

u128 uabs128(__int128 v) { return v < 0 ? -(u128)v : (u128)v; }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr long long kInlineMax = std::numeric_limits<long long>::max();

void mpz_set_i128(mpz_t z, __int128 v) {
  bool neg = v < 0;
  u128 a = uabs128(v);
  mpz_set_ui(z, (unsigned long)(a >> 64));
  mpz_mul_2exp(z, z, 64);
  mpz_add_ui(z, z, (unsigned long)(a & 0xffffffffffffffffULL));
  if (neg) mpz_neg(z, z);
}

}  // namespace

Rational::Rational(long long n, long long d) : num_(0), den_(1), big_(nullptr) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  __int128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  *this = from_i128(nn, dd);
}

void Rational::clear_big() noexcept {
  mpq_clear(big_);
  delete[] reinterpret_cast<unsigned char*>(big_);
  big_ = nullptr;
}

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_), big_(nullptr) {
  if (o.big_) {
    big_ = reinterpret_cast<mpq_ptr>(new unsigned char[sizeof(__mpq_struct)]);
    mpq_init(big_);
    mpq_set(big_, o.big_);
  }
}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  if (o.big_) {
    if (!big_) {
      big_ = reinterpret_cast<mpq_ptr>(new unsigned char[sizeof(__mpq_struct)]);
      mpq_init(big_);
    }
    mpq_set(big_, o.big_);
  } else {
    if (big_) clear_big();
    num_ = o.num_;
    den_ = o.den_;
  }
  return *this;
}

Rational& Rational::operator=(Rational&& o) noexcept {
  if (this == &o) return *this;
  if (big_) clear_big();
  num_ = o.num_;
  den_ = o.den_;
  big_ = o.big_;
  o.big_ = nullptr;
  o.num_ = 0;
  o.den_ = 1;
  return *this;
}

Rational Rational::from_i128(__int128 n, __int128 d) {
  // d > 0 expected
  if (n == 0) return Rational();
  u128 g = gcd128(uabs128(n), (u128)d);
  if (g > 1) {
    n /= (__int128)g;
    d /= (__int128)g;
  }
  if (uabs128(n) <= (u128)kInlineMax && (u128)d <= (u128)kInlineMax) {
    Rational r;
    r.num_ = (long long)n;
    r.den_ = (long long)d;
    return r;
  }
  Rational r;
  r.big_ = reinterpret_cast<mpq_ptr>(new unsigned char[sizeof(__mpq_struct)]);
  mpq_init(r.big_);
  mpz_set_i128(mpq_numref(r.big_), n);
  mpz_set_i128(mpq_denref(r.big_), d);
  // already reduced and d > 0
  return r;
}

void Rational::to_mpq(mpq_t out) const {
  if (big_) {
    mpq_set(out, big_);
  } else {
    mpz_set_si(mpq_numref(out), num_);
    mpz_set_si(mpq_denref(out), den_);
  }
}

Rational Rational::from_mpq(const mpq_t q) {
  if (mpz_fits_slong_p(mpq_numref(q)) && mpz_fits_slong_p(mpq_denref(q))) {
    Rational r;
    r.num_ = mpz_get_si(mpq_numref(q));
    r.den_ = mpz_get_si(mpq_denref(q));
    return r;
  }
  Rational r;
  r.big_ = reinterpret_cast<mpq_ptr>(new unsigned char[sizeof(__mpq_struct)]);
  mpq_init(r.big_);
  mpq_set(r.big_, q);
  return r;
}

Rational Rational::slow_add(const Rational& a, const Rational& b, bool sub) {
  mpq_t qa, qb;
  mpq_init(qa);
  mpq_init(qb);
  a.to_mpq(qa);
  b.to_mpq(qb);
  if (sub)
    mpq_sub(qa, qa, qb);
  else
    mpq_add(qa, qa, qb);
  Rational r = from_mpq(qa);
  mpq_clear(qa);
  mpq_clear(qb);
  return r;
}

Rational Rational::slow_mul(const Rational& a, const Rational& b) {
  mpq_t qa, qb;
  mpq_init(qa);
  mpq_init(qb);
  a.to_mpq(qa);
  b.to_mpq(qb);
  mpq_mul(qa, qa, qb);
  Rational r = from_mpq(qa);
  mpq_clear(qa);
  mpq_clear(qb);
  return r;
}

Rational Rational::slow_div(const Rational& a, const Rational& b) {
  mpq_t qa, qb;
  mpq_init(qa);
  mpq_init(qb);
  a.to_mpq(qa);
  b.to_mpq(qb);
  mpq_div(qa, qa, qb);
  Rational r = from_mpq(qa);
  mpq_clear(qa);
  mpq_clear(qb);
  return r;
}

int Rational::sgn() const noexcept {
  if (big_) return mpq_sgn(big_);
  return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

bool Rational::is_integer() const {
  if (big_) return mpz_cmp_ui(mpq_denref(big_), 1) == 0;
  return den_ == 1;
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  mpq_t q;
  mpq_init(q);
  mpq_neg(q, big_);
  Rational r = from_mpq(q);
  mpq_clear(q);
  return r;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
  if (!big_) {
    __int128 n = den_, d = num_;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return from_i128(n, d);
  }
  mpq_t q;
  mpq_init(q);
  mpq_inv(q, big_);
  Rational r = from_mpq(q);
  mpq_clear(q);
  return r;
}

Rational Rational::abs() const { return sgn() < 0 ? -*this : *this; }

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  mpq_t qa, qb;
  mpq_init(qa);
  mpq_init(qb);
  a.to_mpq(qa);
  b.to_mpq(qb);
  bool res = mpq_cmp(qa, qb) < 0;
  mpq_clear(qa);
  mpq_clear(qb);
  return res;
}

Rational Rational::from_string(const std::string& s) {
  auto slash = s.find('/');
  mpq_t q;
  mpq_init(q);
  std::string numpart = slash == std::string::npos ? s : s.substr(0, slash);
  std::string denpart = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (mpz_set_str(mpq_numref(q), numpart.c_str(), 10) != 0 ||
      mpz_set_str(mpq_denref(q), denpart.c_str(), 10) != 0 ||
      mpz_sgn(mpq_denref(q)) == 0) {
    mpq_clear(q);
    throw std::invalid_argument("Rational: bad literal '" + s + "'");
  }
  mpq_canonicalize(q);
  Rational r = from_mpq(q);
  mpq_clear(q);
  return r;
}

std::string Rational::to_string() const {
  if (!big_) return std::to_string(num_) + "/" + std::to_string(den_);
  char* cs = mpq_get_str(nullptr, 10, big_);
  std::string s(cs);
  std::free(cs);
  if (s.find('/') == std::string::npos) s += "/1";
  return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace sts
