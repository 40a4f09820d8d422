#include "sts/envelope.hpp"

#include <algorithm>
#include <sstream>

#include "sts/parallel.hpp"
#include "sts/rng.hpp"

namespace sts {

// ------------------------------------------------------------------- build

Envelope build_envelope(const TripleSystem& t) { return build_envelope(t, inder_span(t)); }

Envelope build_envelope(const TripleSystem& t, const InderBasis& ib) {
  Envelope env;
  env.n = t.dim();
  env.inder_dim = ib.dim;
  const int n = env.n, h = env.inder_dim;
  const int m = env.dim();
  env.lie = LieAlgebra(m);
  env.lie.grading.assign((size_t)m, 0);
  for (int i = env.odd_begin(); i < m; ++i) env.lie.grading[(size_t)i] = 1;

  const int H = 0, E = 1, F = 2;
  auto sv = [](std::initializer_list<std::pair<long long, Rational>> es) {
    SparseVec v;
    for (auto& e : es)
      if (!e.second.is_zero()) v.nz.push_back(e);
    return v;
  };
  // sp2: [h,e] = 2e, [h,f] = -2f, [e,f] = h
  env.lie.set_bracket(H, E, sv({{E, Rational(2)}}));
  env.lie.set_bracket(H, F, sv({{F, Rational(-2)}}));
  env.lie.set_bracket(E, F, sv({{H, Rational(1)}}));
  // [sp, inder] = 0 (two ideals); [inder, inder] from the closed bracket
  for (int a = 0; a < h; ++a)
    for (int b = a + 1; b < h; ++b) {
      SparseVec v = ib.lie.bracket_of(a, b);
      for (auto& e : v.nz) e.first += env.inder_begin();
      env.lie.set_bracket(env.inder_begin() + a, env.inder_begin() + b, std::move(v));
    }
  const int o1 = env.odd_begin(), o2 = env.odd_begin() + n;
  // action of sp2: a1 (x) x has weight +1, a2 (x) x has weight -1
  for (int i = 0; i < n; ++i) {
    env.lie.set_bracket(H, o1 + i, sv({{o1 + i, Rational(1)}}));
    env.lie.set_bracket(H, o2 + i, sv({{o2 + i, Rational(-1)}}));
    env.lie.set_bracket(E, o2 + i, sv({{o1 + i, Rational(1)}}));
    env.lie.set_bracket(F, o1 + i, sv({{o2 + i, Rational(1)}}));
  }
  // action of inder
  for (int a = 0; a < h; ++a) {
    const SparseColMat& mat = ib.mats[(size_t)a];
    for (int i = 0; i < n; ++i) {
      SparseVec col = mat.col_sparse(i);
      SparseVec v1, v2;
      for (auto& e : col.nz) {
        v1.nz.emplace_back(o1 + e.first, e.second);
        v2.nz.emplace_back(o2 + e.first, e.second);
      }
      env.lie.set_bracket(env.inder_begin() + a, o1 + i, std::move(v1));
      env.lie.set_bracket(env.inder_begin() + a, o2 + i, std::move(v2));
    }
  }
  // odd x odd: [a(x)x_i, b(x)x_j] = (x_i|x_j) gamma_{a,b} + <a|b> d_{ij},
  // with gamma_{a1,a1} = 2e, gamma_{a2,a2} = -2f, gamma_{a1,a2} = -h
  auto dexp = [&](int i, int j) {
    long long pid = i <= j ? t.pair_id(i, j) : t.pair_id(j, i);
    const std::vector<Rational>& c = ib.pair_coeff[(size_t)pid];
    SparseVec v;
    for (int a = 0; a < h; ++a)
      if (!c[(size_t)a].is_zero()) v.nz.emplace_back(env.inder_begin() + a, c[(size_t)a]);
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& om = t.omega_at(i, j);
      // [a1 (x) x_i, a1 (x) x_j], i < j
      if (j > i && !om.is_zero()) {
        env.lie.set_bracket(o1 + i, o1 + j, sv({{E, Rational(2) * om}}));
        env.lie.set_bracket(o2 + i, o2 + j, sv({{F, Rational(-2) * om}}));
      }
      // [a1 (x) x_i, a2 (x) x_j] for every (i, j)
      SparseVec v = dexp(i, j);
      if (!om.is_zero()) {
        v.nz.emplace_back(H, -om);
        std::sort(v.nz.begin(), v.nz.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
      }
      env.lie.set_bracket(o1 + i, o2 + j, std::move(v));
    }
  return env;
}

// ------------------------------------------------------------------ jacobi

std::string JacobiReport::summary() const {
  std::ostringstream os;
  os << (pass ? "pass" : "FAIL") << " mode=" << mode << " seed=" << seed
     << " triples=" << checked;
  if (first) os << " first_violation=(" << (*first)[0] << "," << (*first)[1] << "," << (*first)[2] << ")";
  return os.str();
}

JacobiReport check_jacobi(const LieAlgebra& l, const CheckMode& mode) {
  JacobiReport rep;
  rep.seed = mode.seed;
  const int m = l.dim;
  bool exhaustive = mode.kind == CheckMode::Kind::exhaustive && m <= 52;
  rep.mode = exhaustive ? "exhaustive" : "sampled";
  auto jacobi_at = [&](int i, int j, int k) {
    SparseVec acc = l.ad(k, l.bracket_of(i, j));
    acc.axpy(Rational(1), l.ad(i, l.bracket_of(j, k)));
    acc.axpy(Rational(1), l.ad(j, l.bracket_of(k, i)));
    return acc.empty();
  };
  if (exhaustive) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
          ++rep.checked;
          if (!jacobi_at(i, j, k)) {
            rep.first = {{i, j, k}};
            rep.pass = false;
            return rep;
          }
        }
    rep.pass = true;
    return rep;
  }
  Lcg rng(mode.seed);
  for (long long s = 0; s < mode.count; ++s) {
    int i = (int)rng.below((uint64_t)m);
    int j = (int)rng.below((uint64_t)m);
    int k = (int)rng.below((uint64_t)m);
    ++rep.checked;
    if (!jacobi_at(i, j, k)) {
      rep.first = {{i, j, k}};
      rep.pass = false;
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

// ----------------------------------------------------------------- killing

KillingReport killing(const Envelope& env, const TripleSystem& t) {
  const int m = env.lie.dim;
  const int n = env.n;
  // adjoint matrices and their transposes, compressed columns
  std::vector<SparseColMat> ad((size_t)m), adt((size_t)m);
  parallel_chunks(m, [&](long long lo, long long hi, int) {
    for (int i = (int)lo; i < (int)hi; ++i) {
      std::vector<std::vector<std::pair<int, Rational>>> cols((size_t)m);
      for (int j = 0; j < m; ++j) {
        SparseVec b = env.lie.bracket_of(i, j);
        for (auto& e : b.nz) cols[(size_t)j].emplace_back((int)e.first, e.second);
      }
      ad[(size_t)i] = SparseColMat::from_columns(m, cols);
      adt[(size_t)i] = ad[(size_t)i].transpose();
    }
  });
  Matrix gram(m, m);
  std::vector<std::vector<std::tuple<int, int, Rational>>> partial((size_t)worker_count() + 1);
  parallel_chunks(m, [&](long long lo, long long hi, int w) {
    for (int i = (int)lo; i < (int)hi; ++i)
      for (int j = i; j < m; ++j) {
        // tr(ad_i ad_j) = sum_k <row k of ad_i, col k of ad_j>
        Rational tr;
        for (int k = 0; k < m; ++k) {
          auto [blo, bhi] = ad[(size_t)j].col_range(k);
          if (blo == bhi) continue;
          auto [alo, ahi] = adt[(size_t)i].col_range(k);
          int a = alo, b = blo;
          while (a < ahi && b < bhi) {
            int ra = adt[(size_t)i].ent[(size_t)a].first;
            int rb = ad[(size_t)j].ent[(size_t)b].first;
            if (ra < rb)
              ++a;
            else if (rb < ra)
              ++b;
            else {
              tr += adt[(size_t)i].ent[(size_t)a].second * ad[(size_t)j].ent[(size_t)b].second;
              ++a;
              ++b;
            }
          }
        }
        if (!tr.is_zero()) partial[(size_t)w].emplace_back(i, j, tr);
      }
  });
  for (const auto& chunk : partial)
    for (const auto& [i, j, v] : chunk) {
      gram.set(i, j, v);
      if (i != j) gram.set(j, i, v);
    }

  KillingReport rep;
  rep.gram = BilinearForm(gram, BilinearForm::Sym::symmetric);
  // cross-block orthogonality
  rep.blocks_orthogonal = true;
  gram.for_each_nonzero([&](int i, int j, const Rational&) {
    if (env.block_of(i) != env.block_of(j)) rep.blocks_orthogonal = false;
  });
  auto take_block = [&](int begin, int size) {
    Matrix b(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        const Rational& v = gram.at(begin + i, begin + j);
        if (!v.is_zero()) b.set(i, j, v);
      }
    return BilinearForm(b, BilinearForm::Sym::symmetric);
  };
  auto [ssp, rsp] = signature_rank(take_block(env.sp_begin(), 3));
  auto [sin, rin] = signature_rank(take_block(env.inder_begin(), env.inder_dim));
  auto [sod, rod] = signature_rank(take_block(env.odd_begin(), 2 * n));
  rep.sign_sp = ssp;
  rep.sign_inder = sin;
  rep.sign_odd = sod;
  if (rep.blocks_orthogonal) {
    rep.sign_total = ssp + sin + sod;
    rep.rank = rsp + rin + rod;
  } else {
    auto [st, rt] = signature_rank(rep.gram);
    rep.sign_total = st;
    rep.rank = rt;
  }
  // odd-block factorization kappa(a(x)x, b(x)y) = <a|b> eta(x,y), eta = c Omega
  const int o1 = env.odd_begin(), o2 = env.odd_begin() + n;
  rep.odd_factorizes = true;
  Matrix eta(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!gram.at(o1 + i, o1 + j).is_zero() || !gram.at(o2 + i, o2 + j).is_zero())
        rep.odd_factorizes = false;
      const Rational& v = gram.at(o1 + i, o2 + j);
      // kappa(a2(x)x_i, a1(x)x_j) = <a2|a1> eta(x_i, x_j) = -eta_ij
      if (!(gram.at(o2 + i, o1 + j) == -v)) rep.odd_factorizes = false;
      if (!v.is_zero()) eta.set(i, j, v);
    }
  if (rep.odd_factorizes) {
    // find the ratio against Omega
    Rational ratio;
    bool found = false;
    bool ok = true;
    for (int i = 0; i < n && !found; ++i)
      for (int j = 0; j < n && !found; ++j)
        if (!t.omega_at(i, j).is_zero()) {
          ratio = eta.at(i, j) / t.omega_at(i, j);
          found = true;
        }
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        if (!(eta.at(i, j) == ratio * t.omega_at(i, j))) ok = false;
    rep.odd_factorizes = ok;
    if (ok) rep.eta_ratio = ratio;
  }
  return rep;
}

// ---------------------------------------------------------- classification

namespace {
int so_signature(int a, int b) { return a * b - a * (a - 1) / 2 - b * (b - 1) / 2; }
std::string num(int v) { return std::to_string(v); }
}  // namespace

ClassificationRow classification_row(const ModelLabel& label) {
  ClassificationRow r;
  r.label = label;
  switch (label.family) {
    case Family::special: {
      int n = label.n;
      r.g_name = "sl_" + num(n + 2) + "(R)";
      r.inder_name = "gl_" + num(n) + "(R)";
      r.dim_t = 2 * n;
      r.dim_inder = n * n;
      r.dim_g = (n + 2) * (n + 2) - 1;
      r.sign_g = n + 1;
      r.simple_inder = false;
      break;
    }
    case Family::orthogonal: {
      int p = label.p, q = label.q, mw = p + q;
      r.g_name = "so_" + num(p + 2) + "," + num(q + 2) + "(R)";
      r.inder_name = "so_" + num(p) + "," + num(q) + "(R)+sl_2(R)";
      r.dim_t = 2 * mw;
      r.dim_inder = mw * (mw - 1) / 2 + 3;
      r.dim_g = (mw + 4) * (mw + 3) / 2;
      r.sign_g = so_signature(p + 2, q + 2);
      r.simple_inder = false;
      break;
    }
    case Family::symplectic: {
      int n = label.n;
      r.g_name = "sp_" + num(2 * n + 2) + "(R)";
      r.inder_name = "sp_" + num(2 * n) + "(R)";
      r.dim_t = 2 * n;
      r.dim_inder = n * (2 * n + 1);
      r.dim_g = (n + 1) * (2 * n + 3);
      r.sign_g = n + 1;
      r.sign_inder = n;
      r.simple_inder = true;
      break;
    }
    case Family::unitarian: {
      int p = label.p, q = label.q, mw = p + q;
      r.g_name = "su_" + num(p + 1) + "," + num(q + 1);
      r.inder_name = "u_" + num(p) + "," + num(q);
      r.dim_t = 2 * mw;
      r.dim_inder = mw * mw;
      r.dim_g = (mw + 2) * (mw + 2) - 1;
      r.sign_g = 1 - (p - q) * (p - q);
      r.simple_inder = false;
      break;
    }
    case Family::quaternionic: {
      int n = label.n;
      r.g_name = "so*_" + num(2 * n + 4);
      r.inder_name = "so*_" + num(2 * n) + "+su_2";
      r.dim_t = 4 * n;
      r.dim_inder = 3 + n * (2 * n - 1);
      r.dim_g = (n + 2) * (2 * n + 3);
      r.sign_g = -(n + 2);
      r.simple_inder = false;
      break;
    }
    case Family::g2:
      r = {label, "g2,2", "sl_2(R)", 4, 3, 14, 2, 1, true};
      break;
    case Family::f4:
      r = {label, "f4,4", "sp_6(R)", 14, 21, 52, 4, 3, true};
      break;
    case Family::e6_split:
      r = {label, "e6,6", "sl_6(R)", 20, 35, 78, 6, 5, true};
      break;
    case Family::e6_su33:
      r = {label, "e6,2", "su_3,3", 20, 35, 78, 2, 1, true};
      break;
    case Family::e6_su51:
      r = {label, "e6,-14", "su_5,1", 20, 35, 78, -14, -15, true};
      break;
    case Family::e7_split:
      r = {label, "e7,7", "so_6,6(R)", 32, 66, 133, 7, 6, true};
      break;
    case Family::e7_sostar:
      r = {label, "e7,-5", "so*_12", 32, 66, 133, -5, -6, true};
      break;
    case Family::e7_so102:
      r = {label, "e7,-25", "so_10,2(R)", 32, 66, 133, -25, -26, true};
      break;
    case Family::e8_split:
      r = {label, "e8,8", "e7,7", 56, 133, 248, 8, 7, true};
      break;
    case Family::e8_nonsplit:
      r = {label, "e8,-24", "e7,-25", 56, 133, 248, -24, -25, true};
      break;
  }
  return r;
}

std::vector<ModelLabel> classification_table_labels() {
  return {
      {Family::symplectic, 2, 0, 0},
      {Family::orthogonal, 0, 2, 1},
      {Family::quaternionic, 2, 0, 0},
      {Family::special, 2, 0, 0},
      {Family::unitarian, 0, 2, 1},
      {Family::g2, 0, 0, 0},
      {Family::f4, 0, 0, 0},
      {Family::e6_split, 0, 0, 0},
      {Family::e6_su33, 0, 3, 3},
      {Family::e6_su51, 0, 5, 1},
      {Family::e7_split, 0, 0, 0},
      {Family::e7_sostar, 0, 0, 0},
      {Family::e7_so102, 0, 10, 2},
      {Family::e8_split, 0, 0, 0},
      {Family::e8_nonsplit, 0, 6, 2},
  };
}

}  // namespace sts
