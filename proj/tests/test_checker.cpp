#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "hylo/checker.hpp"
#include "hylo/parser.hpp"
#include "support.hpp"

using namespace hylo;

namespace {

Theory load_corpus_theory(const char* name) {
  return Theory::load_file(std::string(HYLO_CORPUS_DIR "/") + name);
}

ProofFile load_corpus_proof(const char* name, const Theory& th) {
  return load_proof_file(std::string(HYLO_CORPUS_DIR "/") + name, th);
}

FormulaSet set_of(std::initializer_list<const char*> texts,
                  const Signature& sig) {
  FormulaSet out;
  for (const char* t : texts) out.insert(parse_formula(t, sig));
  return out;
}

}  // namespace

TEST_CASE("check_rule_instance: single-step legality") {
  Theory base = load_corpus_theory("base.hlt");
  const Signature& sig = base.signature();
  auto f = [&](const char* t) { return parse_formula(t, sig); };

  // legal boxE
  CHECK_FALSE(check_rule_instance("boxE.box", f("@c p"),
                                  {{f("box box p"), {}}, {f("dia box c"), {}}},
                                  {}, base)
                  .has_value());

  // raa conclusion must be a propositional letter
  auto d = check_rule_instance("raa", f("p -> q"), {{mk_bottom(), {}}}, {}, base);
  REQUIRE(d.has_value());
  CHECK(d->kind == ErrorKind::SideConditionViolation);

  // name freshness: a occurs in the conclusion
  UndischargedMap u{{1, f("a")}};
  auto d2 = check_rule_instance("name", f("@a p"), {{f("@a p"), u}}, {1}, base);
  REQUIRE(d2.has_value());
  CHECK(d2->kind == ErrorKind::SideConditionViolation);

  // same step with a fresh conclusion is legal
  CHECK_FALSE(check_rule_instance("name", f("p"), {{f("p"), u}}, {1}, base)
                  .has_value());

  auto d3 = check_rule_instance("impE", f("q"),
                                {{f("p -> q"), {}}, {f("q"), {}}}, {}, base);
  REQUIRE(d3.has_value());
  CHECK(d3->kind == ErrorKind::ShapeMismatch);
}

TEST_CASE("corpus: first derivation (ground axiom, term shift)") {
  Theory th = load_corpus_theory("rain.hlt");
  ProofFile p = load_corpus_proof("fig3.hlp", th);
  CheckReport r = check_derivation(p.root, th);
  REQUIRE(r.accepted);
  CHECK(equal(r.end_formula, parse_formula("@a q", th.signature())));
  CHECK(hylo::testing::same_set(r.premises, set_of({"@a p"}, th.signature())));
  CHECK(hylo::testing::same_set(r.axiom_formulas, set_of({"p -> q"}, th.signature())));
  CHECK(r.undischarged.size() == 1);
  CHECK(r.undischarged[0].first == 1);
}

TEST_CASE("corpus: second derivation (axiom schema)") {
  Theory th = load_corpus_theory("smarties.hlt");
  ProofFile p = load_corpus_proof("fig4.hlp", th);
  CheckReport r = check_derivation(p.root, th);
  REQUIRE(r.accepted);
  CHECK(equal(r.end_formula, parse_formula("@a (B p)", th.signature())));
  CHECK(hylo::testing::same_set(r.premises, set_of({"@a (D p)"}, th.signature())));
  CHECK(hylo::testing::same_set(r.axiom_formulas, set_of({"D p -> B p"}, th.signature())));
}

TEST_CASE("corpus: third derivation (derived rules, liberalized term)") {
  Theory th = load_corpus_theory("sallyanne.hlt");
  ProofFile p = load_corpus_proof("fig5.hlp", th);
  CheckReport r = check_derivation(p.root, th);
  REQUIRE(r.accepted);
  CHECK(equal(r.end_formula, parse_formula("@a (B p(t1))", th.signature())));
  CHECK(hylo::testing::same_set(
      r.premises,
      set_of({"@a (S p(t0))", "lt(t0,t1)", "@a (dia B p(t1))"},
             th.signature())));
  CHECK(r.axiom_formulas.empty());
}

TEST_CASE("corpus: extra accepted derivations for box, name, raa") {
  Theory th = load_corpus_theory("base.hlt");
  for (const char* name : {"box.hlp", "name.hlp", "raa.hlp"}) {
    ProofFile p = load_corpus_proof(name, th);
    CheckReport r = check_derivation(p.root, th);
    CHECK_MESSAGE(r.accepted, name);
  }
}

TEST_CASE("corpus: every mutation is rejected with the expected kind") {
  std::ifstream manifest(HYLO_CORPUS_DIR "/mutations.txt");
  REQUIRE(manifest.good());
  std::string file, kind;
  int count = 0;
  while (manifest >> file >> kind) {
    ++count;
    std::string path = std::string(HYLO_CORPUS_DIR "/") + file;
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Theory th = [&] {
      auto ref = peek_theory_path(buf.str());
      REQUIRE(ref.has_value());
      return Theory::load_file(std::string(HYLO_CORPUS_DIR "/") + *ref);
    }();
    ProofFile p = parse_proof(buf.str(), th);
    CheckReport r = check_derivation(p.root, th);
    CHECK_MESSAGE(!r.accepted, file);
    REQUIRE_MESSAGE(!r.diagnostics.empty(), file);
    bool found = false;
    for (const auto& d : r.diagnostics)
      if (error_kind_name(d.kind) == kind) found = true;
    CHECK_MESSAGE(found, file, ": expected ", kind, ", got ",
                  error_kind_name(r.diagnostics[0].kind));
  }
  CHECK(count >= 12);
}

TEST_CASE("collect_undischarged: examples and the parcel invariant") {
  DerivPtr leaf = mk_assume(1, mk_prop("p"));
  auto u = collect_undischarged(leaf);
  REQUIRE(u.size() == 1);
  CHECK(u[0].first == 1);
  CHECK(equal(u[0].second, mk_prop("p")));

  Theory rain = load_corpus_theory("rain.hlt");
  ProofFile fig3 = load_corpus_proof("fig3.hlp", rain);
  auto u3 = collect_undischarged(fig3.root);
  REQUIRE(u3.size() == 1);
  CHECK(u3[0].first == 1);
  CHECK(equal(u3[0].second, parse_formula("@a p", rain.signature())));

  Theory sm = load_corpus_theory("smarties.hlt");
  ProofFile fig4 = load_corpus_proof("fig4.hlp", sm);
  auto u4 = collect_undischarged(fig4.root);
  REQUIRE(u4.size() == 1);
  CHECK(equal(u4[0].second, parse_formula("@a (D p)", sm.signature())));

  // equal labels, different formulas
  DerivPtr clash = mk_rule("andI", mk_conj(mk_prop("p"), mk_prop("q")), {},
                           {mk_assume(1, mk_prop("p")), mk_assume(1, mk_prop("q"))});
  CHECK_THROWS_AS(collect_undischarged(clash), InputError);
}

TEST_CASE("proof files: serialization round-trips structurally") {
  Theory th = load_corpus_theory("sallyanne.hlt");
  ProofFile p = load_corpus_proof("fig5.hlp", th);
  ProofFile back = parse_proof(serialize_proof(p), th);
  CHECK(serialize_proof(back) == serialize_proof(p));
  CheckReport r1 = check_derivation(p.root, th);
  CheckReport r2 = check_derivation(back.root, th);
  CHECK(r1.accepted == r2.accepted);
  CHECK(equal(r1.end_formula, r2.end_formula));
}

TEST_CASE("generated derivations: accepted, with stable premise sets") {
  Signature sig;
  sig.declare_prop("p");
  sig.declare_prop("q");
  sig.declare_nominal("a");
  sig.declare_nominal("b");
  sig.declare_modality("m");
  Theory th(sig);
  std::mt19937 rng(2026);
  for (int i = 0; i < 300; ++i) {
    hylo::testing::DerivationGenerator gen(rng, th);
    DerivPtr d = gen.grow(1 + static_cast<int>(i % 5));
    CheckReport r = check_derivation(d, th);
    REQUIRE_MESSAGE(r.accepted, "iteration ", i, ": ",
                    (r.diagnostics.empty() ? "?" : r.diagnostics[0].message));
    // Gamma-stability: the report's premises equal collect_undischarged
    FormulaSet direct;
    for (const auto& [label, f] : collect_undischarged(d)) direct.insert(f);
    REQUIRE(direct == r.premises);
  }
}

TEST_CASE("determinism: identical input gives identical reports") {
  Theory th = load_corpus_theory("rain.hlt");
  ProofFile p = load_corpus_proof("fig3_bad_discharge.hlp", th);
  CheckReport a = check_derivation(p.root, th);
  CheckReport b = check_derivation(p.root, th);
  REQUIRE(a.diagnostics.size() == b.diagnostics.size());
  for (size_t i = 0; i < a.diagnostics.size(); ++i) {
    CHECK(a.diagnostics[i].path == b.diagnostics[i].path);
    CHECK(a.diagnostics[i].message == b.diagnostics[i].message);
  }
}
