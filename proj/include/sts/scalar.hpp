#pragma once

#include <vector>

#include "sts/rational.hpp"

namespace sts {

/// Gaussian rational a + b*i used transiently inside the complex model
/// constructors before realification.
struct GaussianRational {
  Rational re, im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(long long r) : re(r) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  GaussianRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  GaussianRational times_i() const { return {-im, re}; }

  GaussianRational operator-() const { return {-re, -im}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.norm2();
    if (n.is_zero()) throw std::domain_error("GaussianRational: division by zero");
    GaussianRational c = a * b.conj();
    return {c.re / n, c.im / n};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }
};

/// Quaternion a + b*i + c*j + d*k over the rationals. ij = k, ji = -k.
struct RationalQuaternion {
  Rational a, b, c, d;

  RationalQuaternion() = default;
  RationalQuaternion(Rational ra) : a(std::move(ra)) {}
  RationalQuaternion(long long ra) : a(ra) {}
  RationalQuaternion(Rational ra, Rational rb, Rational rc, Rational rd)
      : a(std::move(ra)), b(std::move(rb)), c(std::move(rc)), d(std::move(rd)) {}

  static RationalQuaternion i() { return {0, 1, 0, 0}; }
  static RationalQuaternion j() { return {0, 0, 1, 0}; }
  static RationalQuaternion k() { return {0, 0, 0, 1}; }

  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
  bool is_real() const { return b.is_zero() && c.is_zero() && d.is_zero(); }

  RationalQuaternion conj() const { return {a, -b, -c, -d}; }
  Rational norm2() const { return a * a + b * b + c * c + d * d; }
  Rational real_part() const { return a; }
  RationalQuaternion imag_part() const { return {Rational(0), b, c, d}; }

  RationalQuaternion operator-() const { return {-a, -b, -c, -d}; }

  friend RationalQuaternion operator+(const RationalQuaternion& x, const RationalQuaternion& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend RationalQuaternion operator-(const RationalQuaternion& x, const RationalQuaternion& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  RationalQuaternion& operator-=(const RationalQuaternion& o) { return *this = *this - o; }
  friend RationalQuaternion operator*(const RationalQuaternion& x, const RationalQuaternion& y) {
    return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
            x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
            x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
            x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
  }
  RationalQuaternion& operator+=(const RationalQuaternion& o) { return *this = *this + o; }
  RationalQuaternion& operator*=(const RationalQuaternion& o) { return *this = *this * o; }

  friend bool operator==(const RationalQuaternion& x, const RationalQuaternion& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const RationalQuaternion& x, const RationalQuaternion& y) {
    return !(x == y);
  }
};

/// Realification of a complex coordinate vector, interleaved convention:
/// slot k of v becomes slots (2k, 2k+1) = (Re, Im). Multiplication by i turns
/// into the block-diagonal operator with 2x2 blocks [[0,-1],[1,0]].
std::vector<Rational> realify_complex(const std::vector<GaussianRational>& v, int n);

/// Realification of a quaternionic coordinate vector, interleaved convention:
/// slot k becomes slots (4k..4k+3) = (1, i, j, k) components. Right
/// multiplication by i, j, k becomes fixed 4x4 integer blocks.
std::vector<Rational> realify_quaternion(const std::vector<RationalQuaternion>& v, int n);

}  // namespace sts
