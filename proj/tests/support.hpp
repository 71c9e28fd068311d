// Test-only helpers: deterministic random formulas and random accepted
// derivations used by the property and fuzz suites.

#pragma once

#include <random>
#include <vector>

#include "hylo/checker.hpp"
#include "hylo/derivation.hpp"
#include "hylo/formula.hpp"
#include "hylo/signature.hpp"
#include "hylo/theory.hpp"

namespace hylo::testing {

// std::set::operator== would compare shared_ptr identity; compare structure.
inline bool same_set(const FormulaSet& a, const FormulaSet& b) {
  if (a.size() != b.size()) return false;
  auto ia = a.begin();
  for (auto ib = b.begin(); ib != b.end(); ++ia, ++ib)
    if (!equal(*ia, *ib)) return false;
  return true;
}

inline std::string pick(std::mt19937& rng, const std::set<std::string>& ids) {
  std::uniform_int_distribution<size_t> d(0, ids.size() - 1);
  auto it = ids.begin();
  std::advance(it, d(rng));
  return *it;
}

inline FormulaPtr random_formula(std::mt19937& rng, const Signature& sig,
                                 int depth) {
  std::uniform_int_distribution<int> coin(0, 99);
  auto atom = [&]() -> FormulaPtr {
    std::vector<FormulaPtr> opts;
    for (const auto& p : sig.props()) opts.push_back(mk_prop(p));
    for (const auto& n : sig.nominals()) opts.push_back(mk_nominal(n));
    for (const auto& [pred, arity] : sig.predicates()) {
      if (arity > 0 && sig.time_consts().empty()) continue;
      std::vector<std::string> terms;
      for (int i = 0; i < arity; ++i) terms.push_back(pick(rng, sig.time_consts()));
      opts.push_back(mk_pred(pred, std::move(terms)));
    }
    opts.push_back(mk_bottom());
    std::uniform_int_distribution<size_t> d(0, opts.size() - 1);
    return opts[d(rng)];
  };
  if (depth <= 0) return atom();
  int roll = coin(rng);
  if (roll < 25) return atom();
  if (roll < 40) return mk_conj(random_formula(rng, sig, depth - 1),
                                random_formula(rng, sig, depth - 1));
  if (roll < 55) return mk_impl(random_formula(rng, sig, depth - 1),
                                random_formula(rng, sig, depth - 1));
  if (roll < 65) return mk_neg(random_formula(rng, sig, depth - 1));
  if (roll < 80 && !sig.nominals().empty())
    return mk_sat(pick(rng, sig.nominals()), random_formula(rng, sig, depth - 1));
  if (roll < 90 && !sig.modalities().empty())
    return mk_box(pick(rng, sig.modalities()), random_formula(rng, sig, depth - 1));
  if (!sig.modalities().empty())
    return mk_dia(pick(rng, sig.modalities()), random_formula(rng, sig, depth - 1));
  return atom();
}

// Grows derivations bottom-up by applying rules whose side conditions are
// guaranteed by construction; every result must pass the checker.
class DerivationGenerator {
 public:
  DerivationGenerator(std::mt19937& rng, const Theory& th)
      : rng_(rng), th_(th) {
    const Signature& sig = th.signature();
    for (const auto& p : sig.props()) pool_.push_back(mk_prop(p));
    for (int i = 0; i < 8; ++i) pool_.push_back(random_formula(rng_, sig, 2));
  }

  DerivPtr grow(int depth) {
    if (depth <= 0) return leaf(pool_pick());
    std::uniform_int_distribution<int> d(0, 10);
    switch (d(rng_)) {
      case 0: return gen_andI(depth);
      case 1: return gen_andE(depth);
      case 2: return gen_impE(depth);
      case 3: return gen_impI(depth);
      case 4: return gen_satI(depth);
      case 5: return gen_satE();
      case 6: return gen_boxE();
      case 7: return gen_boxI();
      case 8: return gen_raa();
      case 9: return gen_name(depth);
      default: return gen_term();
    }
  }

 private:
  FormulaPtr pool_pick() {
    std::uniform_int_distribution<size_t> d(0, pool_.size() - 1);
    return pool_[d(rng_)];
  }

  int fresh_label() { return next_label_++; }

  DerivPtr leaf(FormulaPtr f) { return mk_assume(fresh_label(), std::move(f)); }

  static FormulaPtr end_of(const DerivPtr& d) { return d->formula; }

  DerivPtr gen_andI(int depth) {
    DerivPtr a = grow(depth - 1), b = grow(depth - 1);
    FormulaPtr c = mk_conj(end_of(a), end_of(b));
    return mk_rule("andI", c, {}, {a, b});
  }

  DerivPtr gen_andE(int depth) {
    DerivPtr conj = gen_andI(depth);
    bool left = std::uniform_int_distribution<int>(0, 1)(rng_) == 0;
    return mk_rule(left ? "andE1" : "andE2",
                   end_of(conj)->children[left ? 0 : 1], {}, {conj});
  }

  DerivPtr gen_impE(int depth) {
    DerivPtr arg = grow(depth - 1);
    FormulaPtr target = pool_pick();
    DerivPtr imp = leaf(mk_impl(end_of(arg), target));
    return mk_rule("impE", target, {}, {imp, arg});
  }

  DerivPtr gen_impI(int depth) {
    DerivPtr body = grow(depth - 1);
    auto undis = collect_undischarged(body);
    if (!undis.empty() && std::uniform_int_distribution<int>(0, 1)(rng_) == 0) {
      auto& [label, f] = undis[std::uniform_int_distribution<size_t>(
          0, undis.size() - 1)(rng_)];
      return mk_rule("impI", mk_impl(f, end_of(body)), {label}, {body});
    }
    // vacuous discharge of an unused parcel
    return mk_rule("impI", mk_impl(pool_pick(), end_of(body)), {fresh_label()},
                   {body});
  }

  DerivPtr gen_satI(int depth) {
    std::string a = pick(rng_, th_.signature().nominals());
    DerivPtr nom = leaf(mk_nominal(a));
    DerivPtr body = grow(depth - 1);
    return mk_rule("satI", mk_sat(a, end_of(body)), {}, {nom, body});
  }

  DerivPtr gen_satE() {
    std::string a = pick(rng_, th_.signature().nominals());
    FormulaPtr f = pool_pick();
    int label = fresh_label();
    return mk_rule("satE", f, {},
                   {mk_assume(label, mk_nominal(a)), leaf(mk_sat(a, f))});
  }

  DerivPtr gen_boxE() {
    std::string m = pick(rng_, th_.signature().modalities());
    std::string e = pick(rng_, th_.signature().nominals());
    FormulaPtr f = pool_pick();
    return mk_rule("boxE." + m, mk_sat(e, f), {},
                   {leaf(mk_box(m, f)), leaf(mk_dia(m, mk_nominal(e)))});
  }

  // box p from [dia m c] via boxE, re-boxed with a fresh c.
  DerivPtr gen_boxI() {
    std::string m = pick(rng_, th_.signature().modalities());
    std::string c;
    FormulaPtr f;
    for (int tries = 0; tries < 20; ++tries) {
      c = pick(rng_, th_.signature().nominals());
      f = pool_pick();
      if (!occurs_in(c, f)) break;
      f = nullptr;
    }
    if (!f) return leaf(pool_pick());
    int dia_label = fresh_label();
    DerivPtr boxp = leaf(mk_box(m, f));
    DerivPtr diac = mk_assume(dia_label, mk_dia(m, mk_nominal(c)));
    DerivPtr sat = mk_rule("boxE." + m, mk_sat(c, f), {}, {boxp, diac});
    return mk_rule("boxI." + m, mk_box(m, f), {dia_label}, {sat});
  }

  DerivPtr gen_raa() {
    std::string p = pick(rng_, th_.signature().props());
    int label = fresh_label();
    DerivPtr notp = mk_assume(label, mk_neg(mk_prop(p)));
    DerivPtr pp = leaf(mk_prop(p));
    DerivPtr bottom = mk_rule("impE", mk_bottom(), {}, {notp, pp});
    return mk_rule("raa", mk_prop(p), {label}, {bottom});
  }

  DerivPtr gen_name(int depth) {
    DerivPtr body = grow(depth - 1);
    std::string a;
    for (const auto& nom : th_.signature().nominals()) {
      bool used = occurs_in(nom, end_of(body));
      for (const auto& [l, f] : collect_undischarged(body))
        used = used || occurs_in(nom, f);
      if (!used) {
        a = nom;
        break;
      }
    }
    if (a.empty()) return body;
    int label = fresh_label();
    DerivPtr pair = mk_rule("andI", mk_conj(end_of(body), mk_nominal(a)), {},
                            {body, mk_assume(label, mk_nominal(a))});
    DerivPtr back = mk_rule("andE1", end_of(body), {}, {pair});
    return mk_rule("name", end_of(body), {label}, {back});
  }

  // Perspective shift in the shape of the first corpus derivation: one
  // satisfaction-statement premise carried across a named point.
  DerivPtr gen_term() {
    std::string a = pick(rng_, th_.signature().nominals());
    FormulaPtr f = pool_pick();
    FormulaPtr sat = mk_sat(a, f);
    int la = fresh_label(), lf = fresh_label();
    DerivPtr nom1 = mk_assume(la, mk_nominal(a));
    DerivPtr nom2 = mk_assume(la, mk_nominal(a));
    DerivPtr inner = mk_rule("satE", f, {}, {nom1, mk_assume(lf, sat)});
    DerivPtr body = mk_rule("satI", sat, {}, {nom2, inner});
    DerivPtr premise = leaf(sat);
    return mk_rule("term", sat, {la, lf}, {premise, body}, a);
  }

  std::mt19937& rng_;
  const Theory& th_;
  int next_label_ = 1;
  std::vector<FormulaPtr> pool_;
};

}  // namespace hylo::testing
