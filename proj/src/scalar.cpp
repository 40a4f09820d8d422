#include "sts/scalar.hpp"

namespace sts {

std::vector<Rational> realify_complex(const std::vector<GaussianRational>& v, int n) {
  if ((int)v.size() != n) throw std::invalid_argument("realify_complex: length mismatch");
  std::vector<Rational> out(2 * n);
  for (int k = 0; k < n; ++k) {
    out[2 * k] = v[k].re;
    out[2 * k + 1] = v[k].im;
  }
  return out;
}

std::vector<Rational> realify_quaternion(const std::vector<RationalQuaternion>& v, int n) {
  if ((int)v.size() != n) throw std::invalid_argument("realify_quaternion: length mismatch");
  std::vector<Rational> out(4 * n);
  for (int k = 0; k < n; ++k) {
    out[4 * k] = v[k].a;
    out[4 * k + 1] = v[k].b;
    out[4 * k + 2] = v[k].c;
    out[4 * k + 3] = v[k].d;
  }
  return out;
}

}  // namespace sts
