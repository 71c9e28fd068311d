#include "hylo/checker.hpp"

#include <sstream>

namespace hylo {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::SideConditionViolation: return "side-condition-violation";
    case ErrorKind::DischargeError: return "discharge-error";
    case ErrorKind::UnknownAxiom: return "unknown-axiom";
    case ErrorKind::SchemaMismatch: return "schema-mismatch";
    case ErrorKind::ParcelError: return "parcel-error";
  }
  return "?";
}

namespace {

struct StepResult {
  std::optional<Diagnostic> diag;
  UndischargedMap undis;
};

Diagnostic make_diag(const std::string& rule, ErrorKind kind,
                     const std::string& msg) {
  return Diagnostic{"", rule, kind, msg};
}

std::optional<Diagnostic> merge_children(
    const std::vector<std::pair<FormulaPtr, UndischargedMap>>& children,
    const std::string& rule, UndischargedMap& out) {
  for (const auto& [end, undis] : children)
    for (const auto& [label, f] : undis) {
      auto [it, fresh] = out.emplace(label, f);
      if (!fresh && !equal(it->second, f))
        return make_diag(rule, ErrorKind::ParcelError,
                         "label " + std::to_string(label) +
                             " annotates two different formulas");
    }
  return std::nullopt;
}

// Removes one parcel.  When `expected` is set the parcel formula (if any
// occurrences exist) must match it.
std::optional<Diagnostic> drop_parcel(UndischargedMap& undis, int label,
                                      const FormulaPtr& expected,
                                      const std::string& rule) {
  auto it = undis.find(label);
  if (it == undis.end()) return std::nullopt;  // vacuous discharge
  if (expected && !equal(it->second, expected))
    return make_diag(rule, ErrorKind::DischargeError,
                     "parcel " + std::to_string(label) + " holds " +
                         print_formula(it->second) + ", rule discharges " +
                         print_formula(expected));
  undis.erase(it);
  return std::nullopt;
}

bool split_box_rule(const std::string& rule, std::string* base,
                    std::string* modality) {
  auto dot = rule.find('.');
  if (dot == std::string::npos) return false;
  *base = rule.substr(0, dot);
  *modality = rule.substr(dot + 1);
  return *base == "boxI" || *base == "boxE";
}

StepResult apply_step(
    const std::string& rule, const FormulaPtr& conclusion,
    const std::vector<std::pair<FormulaPtr, UndischargedMap>>& children,
    const std::vector<int>& discharge, const Theory& th,
    const std::string& term_nominal) {
  using K = Formula::Kind;
  StepResult res;
  auto fail = [&](ErrorKind kind, const std::string& msg) {
    if (!res.diag) res.diag = make_diag(rule, kind, msg);
    return res;
  };
  auto shape = [&](const std::string& msg) {
    return fail(ErrorKind::ShapeMismatch, msg);
  };

  UndischargedMap merged;
  if (auto d = merge_children(children, rule, merged)) {
    res.diag = d;
    res.undis = merged;
    return res;
  }
  res.undis = merged;

  auto arity = [&](size_t n) { return children.size() == n; };
  auto child_end = [&](size_t i) { return children[i].first; };
  auto no_discharge = [&]() -> bool { return discharge.empty(); };
  // Rules discharging a single parcel.
  auto one_parcel = [&](const FormulaPtr& expected) -> std::optional<Diagnostic> {
    if (discharge.size() > 1)
      return make_diag(rule, ErrorKind::DischargeError,
                       "rule discharges at most one parcel");
    if (discharge.empty()) return std::nullopt;
    return drop_parcel(res.undis, discharge[0], expected, rule);
  };

  std::string base, modality;
  if (split_box_rule(rule, &base, &modality)) {
    if (!th.signature().is_modality(modality))
      return shape("undeclared modality in rule id: " + modality);
    if (base == "boxI") {
      if (!arity(1)) return shape("boxI takes one premise");
      FormulaPtr premise = child_end(0);
      if (premise->kind != K::Sat) return shape("boxI premise must be @c phi");
      std::string c = premise->ident;
      FormulaPtr body = premise->children[0];
      if (conclusion->kind != K::Box || conclusion->ident != modality ||
          !equal(conclusion->children[0], body))
        return shape("boxI conclusion must be the box of the premise body");
      if (auto d = one_parcel(mk_dia(modality, mk_nominal(c)))) {
        res.diag = d;
        return res;
      }
      if (occurs_in(c, conclusion))
        return fail(ErrorKind::SideConditionViolation,
                    "nominal " + c + " occurs in the conclusion of boxI");
      for (const auto& [label, f] : res.undis)
        if (occurs_in(c, f))
          return fail(ErrorKind::SideConditionViolation,
                      "nominal " + c + " occurs in undischarged assumption " +
                          print_formula(f));
      return res;
    }
    // boxE
    if (!arity(2)) return shape("boxE takes two premises");
    FormulaPtr boxp = child_end(0);
    std::string m2, e;
    if (boxp->kind != K::Box || boxp->ident != modality)
      return shape("boxE first premise must be a box formula");
    if (!is_dia_nominal(child_end(1), &m2, &e) || m2 != modality)
      return shape("boxE second premise must be dia " + modality +
                   " of a nominal");
    if (conclusion->kind != K::Sat || conclusion->ident != e ||
        !equal(conclusion->children[0], boxp->children[0]))
      return shape("boxE conclusion must be @" + e + " of the box body");
    if (!no_discharge())
      return fail(ErrorKind::DischargeError, "boxE discharges nothing");
    return res;
  }

  if (rule == "andI") {
    if (!arity(2)) return shape("andI takes two premises");
    if (conclusion->kind != K::Conj ||
        !equal(conclusion->children[0], child_end(0)) ||
        !equal(conclusion->children[1], child_end(1)))
      return shape("andI conclusion must conjoin its premises");
    if (!no_discharge())
      return fail(ErrorKind::DischargeError, "andI discharges nothing");
    return res;
  }
  if (rule == "andE1" || rule == "andE2") {
    if (!arity(1)) return shape(rule + " takes one premise");
    FormulaPtr p = child_end(0);
    if (p->kind != K::Conj) return shape(rule + " premise must be a conjunction");
    if (!equal(conclusion, p->children[rule == "andE1" ? 0 : 1]))
      return shape(rule + " conclusion must be the matching conjunct");
    if (!no_discharge())
      return fail(ErrorKind::DischargeError, rule + " discharges nothing");
    return res;
  }
  if (rule == "impI") {
    if (!arity(1)) return shape("impI takes one premise");
    if (conclusion->kind != K::Impl ||
        !equal(conclusion->children[1], child_end(0)))
      return shape("impI conclusion must be phi -> <premise>");
    if (auto d = one_parcel(conclusion->children[0])) {
      res.diag = d;
      return res;
    }
    return res;
  }
  if (rule == "impE") {
    if (!arity(2)) return shape("impE takes two premises");
    FormulaPtr imp = child_end(0);
    if (imp->kind != K::Impl || !equal(imp->children[0], child_end(1)) ||
        !equal(conclusion, imp->children[1]))
      return shape("impE needs phi -> psi and phi, concluding psi");
    if (!no_discharge())
      return fail(ErrorKind::DischargeError, "impE discharges nothing");
    return res;
  }
  if (rule == "raa") {
    if (!arity(1)) return shape("raa takes one premise");
    if (child_end(0)->kind != K::Bottom) return shape("raa premise must be bot");
    if (conclusion->kind != K::Prop)
      return fail(ErrorKind::SideConditionViolation,
                  "raa conclusion must be a propositional letter, got " +
                      print_formula(conclusion));
    if (auto d = one_parcel(mk_neg(conclusion))) {
      res.diag = d;
      return res;
    }
    return res;
  }
  if (rule == "satI") {
    if (!arity(2)) return shape("satI takes two premises");
    FormulaPtr nom = child_end(0);
    if (nom->kind != K::Nominal) return shape("satI first premise must be a nominal");
    if (conclusion->kind != K::Sat || conclusion->ident != nom->ident ||
        !equal(conclusion->children[0], child_end(1)))
      return shape("satI conclusion must be @" + nom->ident +
                   " of the second premise");
    if (!no_discharge())
      return fail(ErrorKind::DischargeError, "satI discharges nothing");
    return res;
  }
  if (rule == "satE") {
    if (!arity(2)) return shape("satE takes two premises");
    FormulaPtr nom = child_end(0);
    FormulaPtr sat = child_end(1);
    if (nom->kind != K::Nominal) return shape("satE first premise must be a nominal");
    if (sat->kind != K::Sat || sat->ident != nom->ident ||
        !equal(conclusion, sat->children[0]))
      return shape("satE needs a and @a phi, concluding phi");
    if (!no_discharge())
      return fail(ErrorKind::DischargeError, "satE discharges nothing");
    return res;
  }
  if (rule == "term") {
    if (children.empty()) return shape("term needs a final subderivation");
    if (term_nominal.empty() || !th.signature().is_nominal(term_nominal))
      return shape("term needs a declared (nominal a)");
    size_t n = children.size() - 1;
    FormulaPtr psi = child_end(n);
    if (!equal(conclusion, psi))
      return shape("term conclusion must repeat the final subderivation's");
    if (!is_term_dischargeable(psi, th))
      return fail(ErrorKind::SideConditionViolation,
                  "term conclusion is not dischargeable: " + print_formula(psi));
    for (size_t i = 0; i < n; ++i)
      if (!is_term_dischargeable(child_end(i), th))
        return fail(ErrorKind::SideConditionViolation,
                    "term premise is not dischargeable: " +
                        print_formula(child_end(i)));
    // Rebuild: only the final child's parcels are discharged.
    UndischargedMap kept;
    if (auto d = merge_children({children.begin(), children.end() - 1}, rule, kept)) {
      res.diag = d;
      return res;
    }
    FormulaPtr nom = mk_nominal(term_nominal);
    UndischargedMap final_undis = children[n].second;
    for (int label : discharge) {
      auto it = final_undis.find(label);
      if (it == final_undis.end()) continue;  // empty parcel
      bool ok = equal(it->second, nom);
      for (size_t i = 0; i < n && !ok; ++i) ok = equal(it->second, child_end(i));
      if (!ok) {
        res.diag = make_diag(rule, ErrorKind::DischargeError,
                             "term discharges parcel " + std::to_string(label) +
                                 " holding " + print_formula(it->second) +
                                 ", which is neither a premise nor " +
                                 term_nominal);
        res.undis = kept;
        return res;
      }
      final_undis.erase(it);
    }
    if (!final_undis.empty()) {
      auto& [label, f] = *final_undis.begin();
      res.diag = make_diag(
          rule, ErrorKind::SideConditionViolation,
          "subderivation of term keeps undischarged assumption " +
              print_formula(f) + " (label " + std::to_string(label) + ")");
    }
    res.undis = kept;
    return res;
  }
  if (rule == "name") {
    if (!arity(1)) return shape("name takes one premise");
    if (!equal(conclusion, child_end(0)))
      return shape("name conclusion must repeat its premise");
    if (discharge.size() != 1)
      return fail(ErrorKind::DischargeError,
                  "name discharges exactly one nominal parcel");
    auto it = res.undis.find(discharge[0]);
    if (it == res.undis.end())
      return fail(ErrorKind::DischargeError,
                  "name parcel " + std::to_string(discharge[0]) +
                      " has no occurrences; cannot determine the nominal");
    if (it->second->kind != K::Nominal)
      return fail(ErrorKind::DischargeError,
                  "name must discharge a nominal parcel, got " +
                      print_formula(it->second));
    std::string a = it->second->ident;
    res.undis.erase(it);
    if (occurs_in(a, conclusion))
      return fail(ErrorKind::SideConditionViolation,
                  "nominal " + a + " occurs in the conclusion of name");
    for (const auto& [label, f] : res.undis)
      if (occurs_in(a, f))
        return fail(ErrorKind::SideConditionViolation,
                    "nominal " + a + " occurs in undischarged assumption " +
                        print_formula(f));
    return res;
  }

  // Theory-declared derived rule.
  const DerivedRule* dr = th.rule(rule);
  if (!dr) return shape("unknown rule id: " + rule);
  if (!no_discharge())
    return fail(ErrorKind::DischargeError, "derived rules discharge nothing");
  if (children.size() != dr->premises.size())
    return shape("rule " + rule + " expects " +
                 std::to_string(dr->premises.size()) + " premises");
  std::vector<FormulaPtr> ends;
  for (const auto& [end, u] : children) ends.push_back(end);
  auto inst = th.instantiate_rule(rule, ends);
  if (!inst)
    return fail(ErrorKind::SchemaMismatch,
                "premises do not match the patterns of rule " + rule);
  if (!equal(*inst, conclusion))
    return fail(ErrorKind::SchemaMismatch,
                "rule " + rule + " instantiates to " + print_formula(*inst) +
                    ", not " + print_formula(conclusion));
  return res;
}

struct CheckContext {
  const Theory& th;
  CheckReport& report;
  std::map<int, FormulaPtr> parcels;
  std::map<int, std::string> claimed;  // discharge label -> rule path
};

struct NodeResult {
  FormulaPtr end;
  UndischargedMap undis;
};

void diag_at(CheckContext& ctx, const std::string& path,
             const std::string& rule, ErrorKind kind, const std::string& msg) {
  ctx.report.diagnostics.push_back({path, rule, kind, msg});
}

NodeResult check_node(CheckContext& ctx, const DerivPtr& d,
                      const std::string& path) {
  switch (d->kind) {
    case Derivation::Kind::Assumption: {
      auto [it, fresh] = ctx.parcels.emplace(d->label, d->formula);
      if (!fresh && !equal(it->second, d->formula))
        diag_at(ctx, path, "assume", ErrorKind::ParcelError,
                "label " + std::to_string(d->label) +
                    " annotates two different formulas");
      return {d->formula, {{d->label, d->formula}}};
    }
    case Derivation::Kind::Axiom: {
      const FormulaPtr* ax = ctx.th.axiom(d->name);
      if (!ax) {
        diag_at(ctx, path, "axiom", ErrorKind::UnknownAxiom,
                "theory has no axiom named " + d->name);
        return {mk_bottom(), {}};
      }
      ctx.report.axiom_formulas.insert(*ax);
      return {*ax, {}};
    }
    case Derivation::Kind::Schema: {
      const FormulaPtr* pat = ctx.th.schema(d->name);
      if (!pat) {
        diag_at(ctx, path, "schema", ErrorKind::UnknownAxiom,
                "theory has no schema named " + d->name);
      } else if (!match_schema(*pat, d->formula)) {
        diag_at(ctx, path, "schema", ErrorKind::SchemaMismatch,
                print_formula(d->formula) + " is not an instance of schema " +
                    d->name);
      } else {
        ctx.report.axiom_formulas.insert(d->formula);
      }
      return {d->formula, {}};
    }
    case Derivation::Kind::Rule:
      break;
  }

  std::vector<std::pair<FormulaPtr, UndischargedMap>> children;
  for (size_t i = 0; i < d->children.size(); ++i) {
    NodeResult r = check_node(
        ctx, d->children[i], path.empty() ? std::to_string(i) : path + "." + std::to_string(i));
    children.push_back({r.end, std::move(r.undis)});
  }
  for (int label : d->discharge) {
    auto [it, fresh] = ctx.claimed.emplace(label, path);
    if (!fresh)
      diag_at(ctx, path, d->name, ErrorKind::DischargeError,
              "label " + std::to_string(label) +
                  " is discharged twice (also at node " +
                  (it->second.empty() ? "<root>" : it->second) + ")");
  }
  StepResult step = apply_step(d->name, d->formula, children, d->discharge,
                               ctx.th, d->term_nominal);
  if (step.diag) {
    step.diag->path = path;
    ctx.report.diagnostics.push_back(*step.diag);
  }
  return {d->formula, std::move(step.undis)};
}

}  // namespace

CheckReport check_derivation(const DerivPtr& d, const Theory& th) {
  CheckReport report;
  CheckContext ctx{th, report, {}, {}};
  NodeResult root = check_node(ctx, d, "");
  report.end_formula = root.end;
  for (const auto& [label, f] : root.undis) {
    report.undischarged.push_back({label, f});
    report.premises.insert(f);
    auto claimed = ctx.claimed.find(label);
    if (claimed != ctx.claimed.end())
      diag_at(ctx, claimed->second, "", ErrorKind::DischargeError,
              "label " + std::to_string(label) +
                  " has occurrences outside the discharging rule's subtree");
  }
  report.accepted = report.diagnostics.empty();
  return report;
}

std::optional<Diagnostic> check_rule_instance(
    const std::string& rule, const FormulaPtr& conclusion,
    const std::vector<std::pair<FormulaPtr, UndischargedMap>>& children,
    const std::vector<int>& discharge, const Theory& th,
    const std::string& term_nominal) {
  return apply_step(rule, conclusion, children, discharge, th, term_nominal)
      .diag;
}

}  // namespace hylo
