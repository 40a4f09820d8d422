#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "sts/envelope.hpp"
#include "sts/export_json.hpp"
#include "sts/models.hpp"

namespace {

using namespace sts;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ModelLabel parse_label(const std::string& name, int n, int p, int q) {
  auto fam = family_from_name(name);
  if (!fam) throw CLI::ValidationError("label", "unknown label '" + name + "'");
  ModelLabel l;
  l.family = *fam;
  switch (*fam) {
    case Family::special:
    case Family::symplectic:
    case Family::quaternionic:
      l.n = n;
      break;
    case Family::orthogonal:
    case Family::unitarian:
      l.p = p;
      l.q = q;
      break;
    case Family::e6_su33: l.p = 3; l.q = 3; break;
    case Family::e6_su51: l.p = 5; l.q = 1; break;
    case Family::e7_so102: l.p = 10; l.q = 2; break;
    case Family::e8_nonsplit: l.p = 6; l.q = 2; break;
    default:
      break;
  }
  return l;
}

int cmd_build(const std::string& name, int n, int p, int q, const std::string& out,
              uint64_t seed, bool with_envelope) {
  ModelLabel label = parse_label(name, n, p, q);
  auto t0 = std::chrono::steady_clock::now();
  BuiltModel m = build_model(label);
  ExportRecord rec = make_record(m, seed);
  AxiomReport ax = check_axioms(m.system, CheckMode::sampled(seed, 20000));
  rec.verification = ax.summary();
  if (with_envelope) {
    InderBasis ib = inder_span(m.system);
    Envelope env = build_envelope(m.system, ib);
    rec.inder_dim = ib.dim;
    rec.envelope_dim = env.dim();
  }
  std::string text = record_to_json(rec);
  if (out.empty() || out == "-") {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << out << "\n";
      return 2;
    }
    f << text;
  }
  std::cerr << "built " << label.to_string() << " (dim " << m.system.dim() << ") in "
            << seconds_since(t0) << "s\n";
  if (!ax.pass) {
    std::cerr << "verification failed: " << ax.summary() << "\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const std::string& target, int n, int p, int q, const std::string& mode,
               uint64_t seed, long long count, bool with_envelope) {
  CheckMode cm = mode == "sampled" ? CheckMode::sampled(seed, count) : CheckMode::exhaustive();
  cm.seed = seed;
  cm.count = count;
  TripleSystem sys;
  Z4Grading grading;
  bool from_file = target.size() > 5 && target.substr(target.size() - 5) == ".json";
  if (from_file) {
    std::ifstream f(target, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << target << "\n";
      return 2;
    }
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    ExportRecord rec = record_from_json(text);
    sys = system_of(rec);
    grading = grading_of(rec);
  } else {
    BuiltModel m = build_model(parse_label(target, n, p, q));
    sys = m.system;
    grading = m.grading;
  }
  bool ok = true;
  AxiomReport ax = check_axioms(sys, cm);
  std::cout << "axioms: " << ax.summary() << "\n";
  ok = ok && ax.pass;
  bool z4 = check_z4_grading(sys, grading);
  std::cout << "z4-grading: " << (z4 ? "pass" : "FAIL") << "\n";
  ok = ok && z4;
  if (with_envelope) {
    try {
      InderBasis ib = inder_span(sys);
      Envelope env = build_envelope(sys, ib);
      std::cout << "inder: dim " << ib.dim << " (bracket closes)\n";
      JacobiReport jr = check_jacobi(env.lie, cm);
      std::cout << "jacobi: " << jr.summary() << "\n";
      ok = ok && jr.pass;
    } catch (const std::exception& e) {
      std::cout << "envelope: FAIL (" << e.what() << ")\n";
      ok = false;
    }
  }
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int cmd_table() {
  bool all_ok = true;
  std::cout << "label            g          inder        dimT dim(inder) dim(g) "
               "sign(g) sign(inder) sign(odd)  status\n";
  for (const ModelLabel& label : classification_table_labels()) {
    auto t0 = std::chrono::steady_clock::now();
    ClassificationRow row = classification_row(label);
    BuiltModel m = build_model(label);
    InderBasis ib = inder_span(m.system);
    Envelope env = build_envelope(m.system, ib);
    KillingReport kr = killing(env, m.system);
    bool ok = m.system.dim() == row.dim_t && ib.dim == row.dim_inder &&
              env.dim() == row.dim_g && kr.sign_total == row.sign_g && kr.sign_odd == 0 &&
              kr.blocks_orthogonal && kr.rank == env.dim();
    if (row.sign_inder) ok = ok && kr.sign_inder == *row.sign_inder;
    if (row.simple_inder) ok = ok && kr.sign_total - kr.sign_inder == 1;
    std::printf("%-16s %-10s %-12s %4d %10d %6d %7d %11d %9d  %s (%.1fs)\n",
                label.to_string().c_str(), row.g_name.c_str(), row.inder_name.c_str(),
                m.system.dim(), ib.dim, env.dim(), kr.sign_total, kr.sign_inder, kr.sign_odd,
                ok ? "MATCH" : "MISMATCH", seconds_since(t0));
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for simple symplectic triple systems"};
  app.require_subcommand(1);

  std::string label, out = "-", mode = "exhaustive", target;
  int n = 1, p = 1, q = 0;
  uint64_t seed = sts::kDefaultSeed;
  long long count = 100000;
  bool with_envelope = false;

  CLI::App* b = app.add_subcommand("build", "construct a model and export it as JSON");
  b->add_option("label", label, "model label (e.g. f4, e8split, symplectic)")->required();
  b->add_option("--n", n, "size parameter for special/symplectic/quaternionic");
  b->add_option("--p", p, "signature parameter");
  b->add_option("--q", q, "signature parameter");
  b->add_option("--out", out, "output file ('-' for stdout)");
  b->add_option("--seed", seed, "seed recorded for sampled verification");
  b->add_flag("--envelope", with_envelope, "also compute inder/envelope dimensions");

  CLI::App* v = app.add_subcommand("verify", "verify axioms, grading and Jacobi identities");
  v->add_option("target", target, "label or exported .json file")->required();
  v->add_option("--n", n, "size parameter");
  v->add_option("--p", p, "signature parameter");
  v->add_option("--q", q, "signature parameter");
  v->add_option("--mode", mode, "exhaustive | sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  v->add_option("--seed", seed, "sampling seed");
  v->add_option("--count", count, "sample count");
  v->add_flag("--envelope", with_envelope, "also build the envelope and check Jacobi");

  app.add_subcommand("table", "classification table: computed vs expected invariants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (b->parsed()) return cmd_build(label, n, p, q, out, seed, with_envelope);
    if (v->parsed()) return cmd_verify(target, n, p, q, mode, seed, count, with_envelope);
    return cmd_table();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
