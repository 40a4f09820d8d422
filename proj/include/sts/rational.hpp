#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace sts {

/// Exact arbitrary-precision rational. Always in lowest terms, denominator > 0.
///
/// Values that fit in a machine word pair are kept inline; anything larger is
/// promoted to a heap-allocated GMP rational. The inline/GMP split is an
/// invariant: a value is stored big only if it does not fit inline, so
/// equality of mixed representations is always false.
class Rational {
 public:
  Rational() noexcept : num_(0), den_(1), big_(nullptr) {}
  Rational(long long n) noexcept : num_(n), den_(1), big_(nullptr) {}
  Rational(int n) noexcept : num_(n), den_(1), big_(nullptr) {}
  Rational(long long n, long long d);

  Rational(const Rational& o);
  Rational(Rational&& o) noexcept : num_(o.num_), den_(o.den_), big_(o.big_) {
    o.big_ = nullptr;
    o.num_ = 0;
    o.den_ = 1;
  }
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&& o) noexcept;
  ~Rational() {
    if (big_) clear_big();
  }

  /// Parses "p/q" or "p".
  static Rational from_string(const std::string& s);

  bool is_zero() const noexcept { return big_ ? false : num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sgn() const noexcept;

  /// True when the value fits inline (used by tests of the promotion logic).
  bool is_small() const noexcept { return big_ == nullptr; }

  Rational operator-() const;
  Rational reciprocal() const;
  Rational abs() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Lowest-terms "p/q" (always with the denominator, e.g. "3/1", "-1/2").
  std::string to_string() const;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  long long num_;  // valid iff big_ == nullptr
  long long den_;  // > 0 and coprime with num_ iff big_ == nullptr
  mpq_ptr big_;    // owned; canonical; never fits inline

  void clear_big() noexcept;
  void to_mpq(mpq_t out) const;  // out must be initialized
  static Rational from_mpq(const mpq_t q);
  static Rational from_i128(__int128 n, __int128 d);
  static Rational slow_add(const Rational& a, const Rational& b, bool sub);
  static Rational slow_mul(const Rational& a, const Rational& b);
  static Rational slow_div(const Rational& a, const Rational& b);
  friend struct RationalTestPeek;
};

inline Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return Rational::from_i128(n, d);
  }
  return Rational::slow_add(a, b, false);
}

inline Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return Rational::from_i128(n, d);
  }
  return Rational::slow_add(a, b, true);
}

inline Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    __int128 n = (__int128)a.num_ * b.num_;
    __int128 d = (__int128)a.den_ * b.den_;
    return Rational::from_i128(n, d);
  }
  return Rational::slow_mul(a, b);
}

inline Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!a.big_ && !b.big_) {
    __int128 n = (__int128)a.num_ * b.den_;
    __int128 d = (__int128)a.den_ * b.num_;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return Rational::from_i128(n, d);
  }
  return Rational::slow_div(a, b);
}

inline bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return mpq_equal(a.big_, b.big_) != 0;
  return false;  // a big value never equals an inline one
}

}  // namespace sts
