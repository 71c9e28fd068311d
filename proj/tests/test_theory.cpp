#include <doctest.h>

#include <random>

#include "hylo/parser.hpp"
#include "hylo/theory.hpp"
#include "support.hpp"

using namespace hylo;

namespace {

Theory load_corpus(const char* name) {
  return Theory::load_file(std::string(HYLO_CORPUS_DIR "/") + name);
}

}  // namespace

TEST_CASE("match_schema: schema instance of the belief principle") {
  Theory sm = load_corpus("smarties.hlt");
  const Signature& sig = sm.signature();
  FormulaPtr pat = parse_pattern("D ?phi -> B ?phi", sig);
  auto s = match_schema(pat, parse_formula("D p -> B p", sig));
  REQUIRE(s.has_value());
  CHECK(equal(s->formulas.at("phi"), mk_prop("p")));
  CHECK(equal(apply_subst(*s, pat), parse_formula("D p -> B p", sig)));
}

TEST_CASE("match_schema: repeated variables must agree") {
  Signature sig;
  sig.declare_prop("p");
  sig.declare_prop("q");
  sig.declare_modality("D");
  sig.declare_modality("B");
  FormulaPtr pat = parse_pattern("D ?phi -> B ?phi", sig);
  CHECK_FALSE(match_schema(pat, parse_formula("D p -> B q", sig)).has_value());
  CHECK_FALSE(match_schema(pat, parse_formula("D p -> D p", sig)).has_value());
}

TEST_CASE("match_schema: applied variables bind a predicate and a term") {
  Theory sa = load_corpus("sallyanne.hlt");
  const Signature& sig = sa.signature();
  FormulaPtr pat = parse_pattern("?phi(?t)", sig);
  auto s = match_schema(pat, parse_formula("p(t0)", sig));
  REQUIRE(s.has_value());
  CHECK(s->preds.at("phi") == "p");
  CHECK(s->terms.at("t") == "t0");
  // applied vars match only unary predicate atoms
  CHECK_FALSE(match_schema(pat, parse_formula("lt(t0,t1)", sig)).has_value());
}

TEST_CASE("instantiate_rule: the inertia rules of the shipped theory") {
  Theory sa = load_corpus("sallyanne.hlt");
  const Signature& sig = sa.signature();
  auto f = [&](const char* t) { return parse_formula(t, sig); };

  auto r3 = sa.instantiate_rule(
      "R3", {f("B p(t0)"), f("lt(t0,t1)"), f("~ B ~ p(t1)")});
  REQUIRE(r3.has_value());
  CHECK(equal(*r3, f("D p(t1)")));

  auto r2 = sa.instantiate_rule("R2", {f("D p(t1)")});
  REQUIRE(r2.has_value());
  CHECK(equal(*r2, f("B p(t1)")));

  // R1 expects S phi, not B phi
  CHECK_FALSE(sa.instantiate_rule("R1", {f("B p(t0)")}).has_value());
  // inconsistent instantiation across premises
  CHECK_FALSE(sa.instantiate_rule(
                    "R3", {f("B p(t1)"), f("lt(t0,t1)"), f("~ B ~ p(t1)")})
                  .has_value());
  CHECK_THROWS_AS(sa.instantiate_rule("R2", {f("D p(t1)"), f("D p(t1)")}),
                  InputError);
}

TEST_CASE("load_theory: shipped corpus theories") {
  Theory sm = load_corpus("smarties.hlt");
  CHECK(sm.schemas().count("DtoB") == 1);
  CHECK(sm.rules().empty());
  CHECK_FALSE(sm.liberalized_term());

  Theory sa = load_corpus("sallyanne.hlt");
  CHECK(sa.rules().size() == 3);
  CHECK(sa.liberalized_term());
  CHECK(sa.signature().is_rigid("lt"));

  Theory strict = load_corpus("sallyanne_strict.hlt");
  CHECK_FALSE(strict.liberalized_term());

  Theory rain = load_corpus("rain.hlt");
  REQUIRE(rain.axiom("causal") != nullptr);
  CHECK(equal(*rain.axiom("causal"),
              parse_formula("p -> q", rain.signature())));
}

TEST_CASE("load_theory: reserved and duplicate names rejected") {
  CHECK_THROWS_AS(
      Theory::load("prop: p\nrule term: @a ?phi => @a ?phi\nnom: a\n"),
      InputError);
  CHECK_THROWS_AS(Theory::load("prop: p q\n"
                               "axiom one: p -> q\n"
                               "axiom one: q -> p\n"),
                  InputError);
  CHECK_THROWS_AS(Theory::load("prop: p\noption liberalized-term: maybe\n"),
                  InputError);
}

TEST_CASE("substitution soundness on random schema instances") {
  Signature sig;
  sig.declare_prop("p");
  sig.declare_prop("q");
  sig.declare_nominal("a");
  sig.declare_nominal("b");
  sig.declare_modality("m");
  FormulaPtr pat = parse_pattern("m ?phi -> (?psi & @a ?phi)", sig);
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    Subst ground;
    ground.formulas["phi"] = hylo::testing::random_formula(rng, sig, 3);
    ground.formulas["psi"] = hylo::testing::random_formula(rng, sig, 3);
    FormulaPtr inst = apply_subst(ground, pat);
    auto back = match_schema(pat, inst);
    REQUIRE(back.has_value());
    REQUIRE(equal(apply_subst(*back, pat), inst));
  }
}

TEST_CASE("inertia chain: R3 then R2 derives the preserved belief") {
  Theory sa = load_corpus("sallyanne.hlt");
  const Signature& sig = sa.signature();
  auto f = [&](const std::string& t) { return parse_formula(t, sig); };
  for (const std::string& t : {"t0", "t1"})
    for (const std::string& u : {"t0", "t1"}) {
      auto r3 = sa.instantiate_rule(
          "R3", {f("B p(" + t + ")"), f("lt(" + t + "," + u + ")"),
                 f("~ B ~ p(" + u + ")")});
      REQUIRE(r3.has_value());
      auto r2 = sa.instantiate_rule("R2", {*r3});
      REQUIRE(r2.has_value());
      CHECK(equal(*r2, f("B p(" + u + ")")));
    }
}
