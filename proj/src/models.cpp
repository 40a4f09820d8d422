#include "sts/models.hpp"

#include <algorithm>
#include <sstream>

namespace sts {

// -------------------------------------------------------------------- Poly2

Poly2 Poly2::dx() const {
  if (deg == 0) return Poly2(0);
  Poly2 r(deg - 1);
  for (int k = 0; k <= deg - 1; ++k) r.c[(size_t)k] = Rational(deg - k) * c[(size_t)k];
  return r;
}

Poly2 Poly2::dy() const {
  if (deg == 0) return Poly2(0);
  Poly2 r(deg - 1);
  for (int k = 1; k <= deg; ++k) r.c[(size_t)k - 1] = Rational(k) * c[(size_t)k];
  return r;
}

Poly2 Poly2::operator*(const Poly2& o) const {
  Poly2 r(deg + o.deg);
  for (int a = 0; a <= deg; ++a) {
    if (c[(size_t)a].is_zero()) continue;
    for (int b = 0; b <= o.deg; ++b)
      if (!o.c[(size_t)b].is_zero()) r.c[(size_t)(a + b)] += c[(size_t)a] * o.c[(size_t)b];
  }
  return r;
}

Poly2 Poly2::operator+(const Poly2& o) const {
  if (deg != o.deg) throw std::invalid_argument("Poly2: degree mismatch in sum");
  Poly2 r(deg);
  for (int k = 0; k <= deg; ++k) r.c[(size_t)k] = c[(size_t)k] + o.c[(size_t)k];
  return r;
}

Poly2 Poly2::scaled(const Rational& v) const {
  Poly2 r(deg);
  for (int k = 0; k <= deg; ++k) r.c[(size_t)k] = c[(size_t)k] * v;
  return r;
}

namespace {
Rational falling_ratio(int n, int q) {
  // (n-q)!/n! = 1/(n (n-1) ... (n-q+1))
  Rational denom(1);
  for (int t = 0; t < q; ++t) denom *= Rational(n - t);
  return denom.reciprocal();
}
Rational binom(int n, int k) {
  Rational r(1);
  for (int t = 1; t <= k; ++t) r = r * Rational(n - k + t) / Rational(t);
  return r;
}
}  // namespace

Poly2 transvect(const Poly2& f, const Poly2& g, int q) {
  if (q < 0 || q > std::min(f.deg, g.deg))
    throw std::invalid_argument("transvect: order out of range");
  // iterated partials of f: dxf[i] = d^q f / dX^{q-i} dY^i
  std::vector<Poly2> dxf((size_t)q + 1), dxg((size_t)q + 1);
  for (int i = 0; i <= q; ++i) {
    Poly2 t = f;
    for (int s = 0; s < q - i; ++s) t = t.dx();
    for (int s = 0; s < i; ++s) t = t.dy();
    dxf[(size_t)i] = t;
    Poly2 u = g;
    for (int s = 0; s < i; ++s) u = u.dx();
    for (int s = 0; s < q - i; ++s) u = u.dy();
    dxg[(size_t)i] = u;
  }
  Poly2 sum(f.deg + g.deg - 2 * q);
  for (int i = 0; i <= q; ++i) {
    Poly2 term = dxf[(size_t)i] * dxg[(size_t)i];
    Rational coef = binom(q, i);
    if (i & 1) coef = -coef;
    sum = sum + term.scaled(coef);
  }
  return sum.scaled(falling_ratio(f.deg, q) * falling_ratio(g.deg, q));
}

// ----------------------------------------------------------------- SubBasis

SubBasis SubBasis::build(int ambient, std::vector<Vec> vs) {
  SubBasis b;
  b.ambient = ambient;
  b.vecs = std::move(vs);
  // row reduction tracking the combination over the input vectors
  for (size_t m = 0; m < b.vecs.size(); ++m) {
    if ((int)b.vecs[m].size() != ambient) throw std::invalid_argument("SubBasis: length");
    SparseVec row = SparseVec::from_dense(b.vecs[m]);
    std::vector<Rational> combo(b.vecs.size());
    combo[m] = Rational(1);
    // eliminate existing pivots
    size_t pos = 0;
    while (pos < row.nz.size()) {
      long long idx = row.nz[pos].first;
      int hit = -1;
      for (size_t k = 0; k < b.pivots.size(); ++k)
        if (b.pivots[k] == idx) {
          hit = (int)k;
          break;
        }
      if (hit < 0) {
        ++pos;
        continue;
      }
      Rational c = row.nz[pos].second;
      row.axpy(-c, b.rref[(size_t)hit]);
      for (size_t t = 0; t < b.vecs.size(); ++t)
        combo[t] -= c * b.transform[(size_t)hit][t];
    }
    if (row.empty()) throw std::invalid_argument("SubBasis: dependent spanning vectors");
    Rational inv = row.lead_value().reciprocal();
    long long piv = row.lead_index();
    row.scale(inv);
    for (auto& c : combo) c *= inv;
    // back-substitute into earlier rows so pivot columns stay unit
    for (size_t k = 0; k < b.rref.size(); ++k) {
      Rational c;
      for (const auto& [i, val] : b.rref[k].nz)
        if (i == piv) c = val;
      if (c.is_zero()) continue;
      b.rref[k].axpy(-c, row);
      for (size_t t = 0; t < b.vecs.size(); ++t)
        b.transform[k][t] -= c * combo[t];
    }
    b.pivots.push_back(piv);
    b.rref.push_back(std::move(row));
    b.transform.push_back(std::move(combo));
  }
  return b;
}

Vec SubBasis::coords(const Vec& v) const {
  if ((int)v.size() != ambient) throw std::invalid_argument("SubBasis::coords: length");
  // v = sum_k v[pivot_k] rref_k when v lies in the span
  Vec x((size_t)dim());
  for (int k = 0; k < dim(); ++k) {
    const Rational& c = v[(size_t)pivots[(size_t)k]];
    if (c.is_zero()) continue;
    for (size_t t = 0; t < x.size(); ++t) x[t] += c * transform[(size_t)k][t];
  }
  // verify exactly
  Vec resid = v;
  for (int k = 0; k < dim(); ++k) {
    const Rational& c = v[(size_t)pivots[(size_t)k]];
    if (c.is_zero()) continue;
    for (const auto& [p, val] : rref[(size_t)k].nz) resid[(size_t)p] -= c * val;
  }
  for (const auto& r : resid)
    if (!r.is_zero()) throw std::domain_error("SubBasis::coords: vector outside subspace");
  return x;
}

int BuiltModel::find_basis(const std::string& name) const {
  for (size_t i = 0; i < basis_names.size(); ++i)
    if (basis_names[i] == name) return (int)i;
  throw std::invalid_argument("BuiltModel: no basis vector named " + name);
}

// ------------------------------------------------------------- small utils

namespace {

using Cols = std::vector<std::vector<std::pair<int, Rational>>>;

TripleSystem finish_system(ModelLabel label, Matrix omega, std::vector<SparseColMat> d) {
  TripleSystem t = TripleSystem::from_parts(
      std::move(label), BilinearForm(std::move(omega), BilinearForm::Sym::alternating),
      std::move(d));
  Rational alpha = calibrate_alpha(t);
  if (!alpha.is_one())
    throw std::runtime_error("model construction: calibration scalar is " + alpha.to_string() +
                             ", expected 1");
  return t;
}

}  // namespace

// ------------------------------------------------------------------ special

BuiltModel build_special(int n) {
  if (n < 1) throw std::invalid_argument("build_special: n >= 1 required");
  const int dim = 2 * n;  // x_1..x_n, f_1..f_n
  Matrix omega(dim, dim);
  for (int a = 0; a < n; ++a) {
    omega.set(a, n + a, Rational(-1));  // (x_a | f_a) = -1
    omega.set(n + a, a, Rational(1));   // (f_a | x_a) = +1
  }
  std::vector<SparseColMat> d;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      Cols cols((size_t)dim);
      bool iw = i < n, jw = j < n;
      if (iw != jw) {
        int a = iw ? i : j;          // index into W
        int b = (iw ? j : i) - n;    // index into W^*
        for (int c = 0; c < dim; ++c) {
          std::map<int, Rational> acc;
          if (c < n) {
            // on y = x_c: f_b(x_a) x_c + 2 f_b(x_c) x_a
            if (a == b) acc[c] += Rational(1);
            if (c == b) acc[a] += Rational(2);
          } else {
            // on g = f_{c-n}: -f_b(x_a) g - 2 g(x_a) f_b
            if (a == b) acc[c] += Rational(-1);
            if (c - n == a) acc[n + b] += Rational(-2);
          }
          for (auto& [row, v] : acc)
            if (!v.is_zero()) cols[(size_t)c].emplace_back(row, v);
        }
      }
      d.push_back(SparseColMat::from_columns(dim, cols));
    }
  BuiltModel m;
  m.system = finish_system({Family::special, n, 0, 0}, std::move(omega), std::move(d));
  m.grading.deg.assign((size_t)dim, 1);
  for (int a = 0; a < n; ++a) m.grading.deg[(size_t)(n + a)] = 3;
  for (int a = 0; a < n; ++a) m.basis_names.push_back("x" + std::to_string(a + 1));
  for (int a = 0; a < n; ++a) m.basis_names.push_back("f" + std::to_string(a + 1));
  return m;
}

// --------------------------------------------------------------- orthogonal

BuiltModel build_orthogonal(int p, int q) {
  if (p < 0 || q < 0 || p + q < 3)
    throw std::invalid_argument("build_orthogonal: p+q >= 3 required");
  const int m = p + q;
  const int dim = 2 * m;  // u x w_a (a < m), then v x w_a
  auto bsign = [&](int a) { return a < p ? Rational(1) : Rational(-1); };
  // <.|.> on V over basis (u, v)
  auto eps = [](int s, int t) -> Rational {
    if (s == 0 && t == 1) return Rational(1);
    if (s == 1 && t == 0) return Rational(-1);
    return Rational(0);
  };
  Rational half(1, 2);
  Matrix omega(dim, dim);
  for (int s = 0; s < 2; ++s)
    for (int t = 0; t < 2; ++t) {
      Rational e = eps(s, t);
      if (e.is_zero()) continue;
      for (int a = 0; a < m; ++a)
        omega.set(s * m + a, t * m + a, half * e * bsign(a));
    }
  std::vector<SparseColMat> d;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      int s = i / m, x = i % m;
      int t = j / m, y = j % m;
      Cols cols((size_t)dim);
      for (int k = 0; k < dim; ++k) {
        int r = k / m, z = k % m;
        std::map<int, Rational> acc;
        // 1/2 (<s|r> t + <t|r> s) (x) b(x,y) z
        if (x == y) {
          Rational bxy = bsign(x);
          Rational c1 = half * eps(s, r) * bxy;
          if (!c1.is_zero()) acc[t * m + z] += c1;
          Rational c2 = half * eps(t, r) * bxy;
          if (!c2.is_zero()) acc[s * m + z] += c2;
        }
        // <s|t> r (x) (b(x,z) y - b(y,z) x)
        Rational est = eps(s, t);
        if (!est.is_zero()) {
          if (x == z) acc[r * m + y] += est * bsign(x);
          if (y == z) acc[r * m + x] -= est * bsign(y);
        }
        for (auto& [row, v] : acc)
          if (!v.is_zero()) cols[(size_t)k].emplace_back(row, v);
      }
      d.push_back(SparseColMat::from_columns(dim, cols));
    }
  BuiltModel bm;
  bm.system = finish_system({Family::orthogonal, 0, p, q}, std::move(omega), std::move(d));
  bm.grading.deg.assign((size_t)dim, 1);
  for (int a = 0; a < m; ++a) bm.grading.deg[(size_t)(m + a)] = 3;
  for (int a = 0; a < m; ++a) bm.basis_names.push_back("u*w" + std::to_string(a + 1));
  for (int a = 0; a < m; ++a) bm.basis_names.push_back("v*w" + std::to_string(a + 1));
  return bm;
}

// --------------------------------------------------------------- symplectic

BuiltModel build_symplectic(int n) {
  if (n < 1) throw std::invalid_argument("build_symplectic: n >= 1 required");
  const int dim = 2 * n;
  Matrix omega(dim, dim);
  for (int a = 0; a < n; ++a) {
    omega.set(a, n + a, Rational(1));
    omega.set(n + a, a, Rational(-1));
  }
  std::vector<Vec> og = omega.dense_rows();
  std::vector<SparseColMat> d;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      Cols cols((size_t)dim);
      for (int k = 0; k < dim; ++k) {
        std::map<int, Rational> acc;
        if (!og[(size_t)i][(size_t)k].is_zero()) acc[j] += og[(size_t)i][(size_t)k];
        if (!og[(size_t)j][(size_t)k].is_zero()) acc[i] += og[(size_t)j][(size_t)k];
        for (auto& [row, v] : acc)
          if (!v.is_zero()) cols[(size_t)k].emplace_back(row, v);
      }
      d.push_back(SparseColMat::from_columns(dim, cols));
    }
  BuiltModel m;
  m.system = finish_system({Family::symplectic, n, 0, 0}, std::move(omega), std::move(d));
  m.grading.deg.assign((size_t)dim, 1);
  for (int a = 0; a < n; ++a) m.grading.deg[(size_t)(n + a)] = 3;
  for (int a = 0; a < n; ++a) m.basis_names.push_back("x" + std::to_string(a + 1));
  for (int a = 0; a < n; ++a) m.basis_names.push_back("y" + std::to_string(a + 1));
  return m;
}

// ---------------------------------------------------------------- unitarian

BuiltModel build_unitarian(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1)
    throw std::invalid_argument("build_unitarian: p+q >= 1 required");
  const int m = p + q;
  const int dim = 2 * m;  // basis w_r, i w_r interleaved: index 2r, 2r+1
  const GaussianRational I = GaussianRational::i();
  auto tau = [&](int idx) { return (idx & 1) ? I : GaussianRational(1); };
  auto slot = [&](int idx) { return idx >> 1; };
  auto hsign = [&](int r) { return Rational(r < p ? 1 : -1); };
  // h(a, b) for basis elements (linear in the first, conjugate-linear in the
  // second argument)
  auto h = [&](int a, int b) -> GaussianRational {
    if (slot(a) != slot(b)) return GaussianRational(0);
    return tau(a) * tau(b).conj() * GaussianRational(hsign(slot(a)));
  };
  Matrix omega(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      Rational v = h(a, b).im;
      if (!v.is_zero()) omega.set(a, b, v);
    }
  std::vector<SparseColMat> d;
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b) {
      Cols cols((size_t)dim);
      for (int c = 0; c < dim; ++c) {
        // i ( h(z,x) y + h(z,y) x + Re h(x,y) z ), z = basis c
        GaussianRational cy = I * h(c, a) * tau(b);  // coefficient on w_{slot(b)}
        GaussianRational cx = I * h(c, b) * tau(a);
        GaussianRational cz = I * GaussianRational(h(a, b).re) * tau(c);
        std::map<int, Rational> acc;
        auto put = [&](int r, const GaussianRational& g) {
          if (!g.re.is_zero()) acc[2 * r] += g.re;
          if (!g.im.is_zero()) acc[2 * r + 1] += g.im;
        };
        put(slot(b), cy);
        put(slot(a), cx);
        put(slot(c), cz);
        for (auto& [row, v] : acc)
          if (!v.is_zero()) cols[(size_t)c].emplace_back(row, v);
      }
      d.push_back(SparseColMat::from_columns(dim, cols));
    }
  BuiltModel bm;
  bm.system = finish_system({Family::unitarian, 0, p, q}, std::move(omega), std::move(d));
  bm.grading.deg.assign((size_t)dim, 1);
  for (int r = 0; r < m; ++r) bm.grading.deg[(size_t)(2 * r + 1)] = 3;
  for (int r = 0; r < m; ++r) {
    bm.basis_names.push_back("w" + std::to_string(r + 1));
    bm.basis_names.push_back("i*w" + std::to_string(r + 1));
  }
  return bm;
}

// ------------------------------------------------------------- quaternionic

BuiltModel build_quaternionic(int n) {
  if (n < 1) throw std::invalid_argument("build_quaternionic: n >= 1 required");
  const int dim = 4 * n;  // u_r, u_r i, u_r j, u_r k
  using Q = RationalQuaternion;
  const Q qi = Q::i();
  auto unit = [&](int s) {
    switch (s) {
      case 0: return Q(1);
      case 1: return Q::i();
      case 2: return Q::j();
      default: return Q::k();
    }
  };
  auto slot = [&](int idx) { return idx >> 2; };
  auto comp = [&](int idx) { return idx & 3; };
  // h(x, y) = conj(a) i b for x = u_r a, y = u_r b on the same slot
  auto h = [&](int a, int b) -> Q {
    if (slot(a) != slot(b)) return Q(0);
    return unit(comp(a)).conj() * qi * unit(comp(b));
  };
  Matrix omega(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      Rational v = h(a, b).real_part();
      if (!v.is_zero()) omega.set(a, b, v);
    }
  std::vector<SparseColMat> d;
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b) {
      Cols cols((size_t)dim);
      for (int c = 0; c < dim; ++c) {
        // x h(y,z) + y h(x,z) + z Im h(x,y), right multiplication
        Q tx = unit(comp(a)) * h(b, c);
        Q ty = unit(comp(b)) * h(a, c);
        Q tz = unit(comp(c)) * h(a, b).imag_part();
        std::map<int, Rational> acc;
        auto put = [&](int r, const Q& g) {
          if (!g.a.is_zero()) acc[4 * r + 0] += g.a;
          if (!g.b.is_zero()) acc[4 * r + 1] += g.b;
          if (!g.c.is_zero()) acc[4 * r + 2] += g.c;
          if (!g.d.is_zero()) acc[4 * r + 3] += g.d;
        };
        put(slot(a), tx);
        put(slot(b), ty);
        put(slot(c), tz);
        for (auto& [row, v] : acc)
          if (!v.is_zero()) cols[(size_t)c].emplace_back(row, v);
      }
      d.push_back(SparseColMat::from_columns(dim, cols));
    }
  BuiltModel bm;
  bm.system = finish_system({Family::quaternionic, n, 0, 0}, std::move(omega), std::move(d));
  bm.grading.deg.assign((size_t)dim, 1);
  for (int r = 0; r < n; ++r) {
    bm.grading.deg[(size_t)(4 * r + 1)] = 3;  // u_r i
    bm.grading.deg[(size_t)(4 * r + 3)] = 3;  // u_r k
  }
  static const char* suffix[4] = {"", "*i", "*j", "*k"};
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < 4; ++s)
      bm.basis_names.push_back("u" + std::to_string(r + 1) + suffix[s]);
  return bm;
}

// ----------------------------------------------------------------------- g2

BuiltModel build_g2() {
  const int dim = 4;  // X^3, X^2 Y, X Y^2, Y^3
  auto basis = [&](int k) { return Poly2::monomial(3, k); };
  Matrix omega(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      Poly2 v = transvect(basis(a), basis(b), 3);
      if (!v.c[0].is_zero()) omega.set(a, b, v.c[0]);
    }
  std::vector<SparseColMat> d;
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b) {
      Cols cols((size_t)dim);
      Poly2 fg2 = transvect(basis(a), basis(b), 2);
      for (int c = 0; c < dim; ++c) {
        Poly2 out = transvect(fg2, basis(c), 1).scaled(Rational(6));
        for (int k = 0; k < dim; ++k)
          if (!out.c[(size_t)k].is_zero()) cols[(size_t)c].emplace_back(k, out.c[(size_t)k]);
      }
      d.push_back(SparseColMat::from_columns(dim, cols));
    }
  BuiltModel m;
  m.system = finish_system({Family::g2, 0, 0, 0}, std::move(omega), std::move(d));
  // weights 3, 1, -1, -3 mod 4
  m.grading.deg = {3, 1, 3, 1};
  m.basis_names = {"X^3", "X^2Y", "XY^2", "Y^3"};
  return m;
}

// ----------------------------------------------------------------- dispatch

BuiltModel build_model(const ModelLabel& label) {
  switch (label.family) {
    case Family::special: return build_special(label.n);
    case Family::orthogonal: return build_orthogonal(label.p, label.q);
    case Family::symplectic: return build_symplectic(label.n);
    case Family::unitarian: return build_unitarian(label.p, label.q);
    case Family::quaternionic: return build_quaternionic(label.n);
    case Family::g2: return build_g2();
    case Family::f4: return build_f4();
    case Family::e6_split: return build_e6_split();
    case Family::e6_su33: return build_e6_nonsplit(3);
    case Family::e6_su51: return build_e6_nonsplit(5);
    case Family::e7_split: return build_e7_split();
    case Family::e7_so102: return build_e7_so102();
    case Family::e7_sostar: return build_e7_sostar();
    case Family::e8_split: return build_e8_split();
    case Family::e8_nonsplit: return build_e8_nonsplit();
  }
  throw std::invalid_argument("build_model: unknown label");
}

Z4Grading z4_grading_for(const ModelLabel& label) { return build_model(label).grading; }

}  // namespace sts
