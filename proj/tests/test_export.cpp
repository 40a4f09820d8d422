#include <doctest.h>

#include "sts/export_json.hpp"

using namespace sts;

TEST_CASE("export round-trips byte-identically and losslessly") {
  for (const BuiltModel& m : {build_symplectic(2), build_g2(), build_unitarian(2, 1)}) {
    ExportRecord rec = make_record(m, 12345);
    std::string text = record_to_json(rec);
    ExportRecord back = record_from_json(text);
    CHECK(back == rec);
    CHECK(record_to_json(back) == text);
    TripleSystem sys = system_of(back);
    CHECK(sys.dim() == m.system.dim());
    CHECK(sys.omega().gram == m.system.omega().gram);
    for (long long p = 0; p < sys.pair_count(); ++p)
      CHECK(sys.d_family()[(size_t)p] == m.system.d_family()[(size_t)p]);
    Z4Grading g = grading_of(back);
    CHECK(g.deg == m.grading.deg);
  }
}

TEST_CASE("records with extra sections survive the round trip") {
  BuiltModel m = build_special(2);
  ExportRecord rec = make_record(m, 7);
  rec.inder_dim = 4;
  rec.envelope_dim = 15;
  rec.signatures = {{3, 1, 2, 0}};
  rec.verification = "pass mode=sampled";
  std::string text = record_to_json(rec);
  ExportRecord back = record_from_json(text);
  CHECK(back == rec);
  CHECK(record_to_json(back) == text);
}

TEST_CASE("a mutated record fails verification") {
  BuiltModel m = build_symplectic(2);
  ExportRecord rec = make_record(m, 1);
  REQUIRE(!rec.trip.empty());
  // flip the sign of one tensor entry
  auto& [i, j, k, l, v] = rec.trip[0];
  v = (Rational::from_string(v) * Rational(-1)).to_string();
  TripleSystem sys = system_of(rec);
  AxiomReport rep = check_axioms(sys, CheckMode::exhaustive());
  CHECK_FALSE(rep.pass);
  CHECK(rep.first.has_value());
}

TEST_CASE("rational serialization format") {
  CHECK(Rational(-3, 6).to_string() == "-1/2");
  CHECK(Rational::from_string("-1/2") == Rational(-1, 2));
  CHECK(Rational(4).to_string() == "4/1");
}
