#include "sts/export_json.hpp"

#include <json.hpp>

namespace sts {

namespace {
using ordered_json = nlohmann::ordered_json;

// parameters that identify a model within its family
ordered_json params_of(const ModelLabel& l) {
  ordered_json p = ordered_json::object();
  switch (l.family) {
    case Family::special:
    case Family::symplectic:
    case Family::quaternionic:
      p["n"] = l.n;
      break;
    case Family::orthogonal:
    case Family::unitarian:
      p["p"] = l.p;
      p["q"] = l.q;
      break;
    default:
      break;
  }
  return p;
}

ModelLabel label_from(const std::string& name, const ordered_json& params) {
  auto fam = family_from_name(name);
  if (!fam) throw std::invalid_argument("record: unknown label " + name);
  ModelLabel l;
  l.family = *fam;
  switch (l.family) {
    case Family::special:
    case Family::symplectic:
    case Family::quaternionic:
      l.n = params.at("n").get<int>();
      break;
    case Family::orthogonal:
    case Family::unitarian:
      l.p = params.at("p").get<int>();
      l.q = params.at("q").get<int>();
      break;
    case Family::e6_su33:
      l.p = 3;
      l.q = 3;
      break;
    case Family::e6_su51:
      l.p = 5;
      l.q = 1;
      break;
    case Family::e7_so102:
      l.p = 10;
      l.q = 2;
      break;
    case Family::e8_nonsplit:
      l.p = 6;
      l.q = 2;
      break;
    default:
      break;
  }
  return l;
}
}  // namespace

ExportRecord make_record(const BuiltModel& m, uint64_t seed) {
  ExportRecord r;
  const TripleSystem& t = m.system;
  r.label = t.label();
  r.dim = t.dim();
  r.seed = seed;
  for (int i = 0; i < r.dim; ++i)
    for (int j = i + 1; j < r.dim; ++j) {
      const Rational& v = t.omega_at(i, j);
      if (!v.is_zero()) r.omega.emplace_back(i, j, v.to_string());
    }
  for (int i = 0; i < r.dim; ++i)
    for (int j = i; j < r.dim; ++j) {
      const SparseColMat& d = t.d(i, j);
      for (int k = 0; k < r.dim; ++k) {
        auto [lo, hi] = d.col_range(k);
        for (int s = lo; s < hi; ++s)
          r.trip.emplace_back(i, j, k, d.ent[(size_t)s].first,
                              d.ent[(size_t)s].second.to_string());
      }
    }
  r.deg1 = m.grading.part(1);
  r.deg3 = m.grading.part(3);
  return r;
}

std::string record_to_json(const ExportRecord& r) {
  ordered_json j;
  j["label"] = family_name(r.label.family);
  j["params"] = params_of(r.label);
  j["dim"] = r.dim;
  ordered_json om = ordered_json::array();
  for (const auto& [i, k, v] : r.omega) om.push_back(ordered_json::array({i, k, v}));
  j["omega"] = std::move(om);
  ordered_json tr = ordered_json::array();
  for (const auto& [i, k, c, l, v] : r.trip)
    tr.push_back(ordered_json::array({i, k, c, l, v}));
  j["trip"] = std::move(tr);
  j["grading"] = ordered_json{{"deg1", r.deg1}, {"deg3", r.deg3}};
  j["seed"] = r.seed;
  if (r.inder_dim) j["inder_dim"] = *r.inder_dim;
  if (r.envelope_dim) j["envelope_dim"] = *r.envelope_dim;
  if (r.signatures)
    j["signatures"] = ordered_json{{"g", (*r.signatures)[0]},
                                   {"sp", (*r.signatures)[1]},
                                   {"inder", (*r.signatures)[2]},
                                   {"odd", (*r.signatures)[3]}};
  if (r.verification) j["verification"] = *r.verification;
  return j.dump();
}

ExportRecord record_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  ExportRecord r;
  r.label = label_from(j.at("label").get<std::string>(), j.at("params"));
  r.dim = j.at("dim").get<int>();
  for (const auto& e : j.at("omega"))
    r.omega.emplace_back(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<std::string>());
  for (const auto& e : j.at("trip"))
    r.trip.emplace_back(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
                        e.at(3).get<int>(), e.at(4).get<std::string>());
  r.deg1 = j.at("grading").at("deg1").get<std::vector<int>>();
  r.deg3 = j.at("grading").at("deg3").get<std::vector<int>>();
  r.seed = j.at("seed").get<uint64_t>();
  if (j.contains("inder_dim")) r.inder_dim = j.at("inder_dim").get<int>();
  if (j.contains("envelope_dim")) r.envelope_dim = j.at("envelope_dim").get<int>();
  if (j.contains("signatures")) {
    const auto& s = j.at("signatures");
    r.signatures = {{s.at("g").get<int>(), s.at("sp").get<int>(), s.at("inder").get<int>(),
                     s.at("odd").get<int>()}};
  }
  if (j.contains("verification")) r.verification = j.at("verification").get<std::string>();
  return r;
}

TripleSystem system_of(const ExportRecord& r) {
  const int n = r.dim;
  Matrix omega(n, n);
  for (const auto& [i, j, v] : r.omega) {
    Rational val = Rational::from_string(v);
    omega.set(i, j, val);
    omega.set(j, i, -val);
  }
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> cols(
      (size_t)n * (n + 1) / 2,
      std::vector<std::vector<std::pair<int, Rational>>>((size_t)n));
  auto pair_id = [&](int i, int j) {
    return (long long)i * n - (long long)i * (i - 1) / 2 + (j - i);
  };
  for (const auto& [i, j, k, l, v] : r.trip) {
    if (i > j || i < 0 || j >= n || k < 0 || k >= n || l < 0 || l >= n)
      throw std::invalid_argument("record: bad tensor index");
    cols[(size_t)pair_id(i, j)][(size_t)k].emplace_back(l, Rational::from_string(v));
  }
  std::vector<SparseColMat> d;
  d.reserve(cols.size());
  for (auto& c : cols) d.push_back(SparseColMat::from_columns(n, c));
  return TripleSystem::from_parts(r.label,
                                  BilinearForm(omega, BilinearForm::Sym::alternating),
                                  std::move(d));
}

Z4Grading grading_of(const ExportRecord& r) {
  Z4Grading g;
  g.deg.assign((size_t)r.dim, 0);
  for (int i : r.deg1) g.deg.at((size_t)i) = 1;
  for (int i : r.deg3) g.deg.at((size_t)i) = 3;
  return g;
}

}  // namespace sts
