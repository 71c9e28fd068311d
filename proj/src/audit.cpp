#include "hylo/audit.hpp"

#include <sstream>

namespace hylo {

namespace {

FormulaSet subformula_closure(const FormulaPtr& phi, const FormulaSet& gamma) {
  FormulaSet closure = subformulas(phi);
  for (const auto& g : gamma)
    for (const auto& s : subformulas(g)) closure.insert(s);
  return closure;
}

bool nominal_or_dia_nominal(const FormulaPtr& f) {
  return f->kind == Formula::Kind::Nominal ||
         is_dia_nominal(f, nullptr, nullptr);
}

bool neg_of_letter_in(const FormulaPtr& f, const FormulaSet& closure) {
  if (!is_neg(f)) return false;
  FormulaPtr p = neg_operand(f);
  return p->kind == Formula::Kind::Prop && closure.count(p) != 0;
}

}  // namespace

std::set<int> classify_occurrence(const FormulaPtr& occurrence,
                                  const FormulaPtr& phi,
                                  const FormulaSet& gamma) {
  FormulaSet closure = subformula_closure(phi, gamma);
  std::set<int> classes;
  const FormulaPtr& f = occurrence;
  if (f->kind == Formula::Kind::Sat) {
    const FormulaPtr& body = f->children[0];
    if (closure.count(body) || nominal_or_dia_nominal(body)) classes.insert(1);
    if (neg_of_letter_in(body, closure)) classes.insert(4);
    if (body->kind == Formula::Kind::Bottom) classes.insert(5);
  }
  if (closure.count(f) || nominal_or_dia_nominal(f)) classes.insert(2);
  if (f->kind == Formula::Kind::Nominal) classes.insert(3);
  if (neg_of_letter_in(f, closure)) classes.insert(4);
  if (f->kind == Formula::Kind::Bottom) classes.insert(5);
  return classes;
}

namespace {

void collect_derived_conclusions(const DerivPtr& d, const Theory& th,
                                 FormulaSet& out) {
  if (d->kind == Derivation::Kind::Rule && th.rule(d->name))
    out.insert(d->formula);
  for (const auto& c : d->children) collect_derived_conclusions(c, th, out);
}

void audit_node(const DerivPtr& d, const Theory& th, const std::string& path,
                const FormulaPtr& phi, const FormulaSet& gamma,
                AuditReport& report) {
  FormulaPtr f = d->formula;
  if (!f && d->kind == Derivation::Kind::Axiom)
    if (const FormulaPtr* ax = th.axiom(d->name)) f = *ax;
  if (f) {
    AuditEntry e{path, f, classify_occurrence(f, phi, gamma), false};
    e.violation = e.classes.empty();
    if (e.violation) ++report.violations;
    report.entries.push_back(std::move(e));
  }
  for (size_t i = 0; i < d->children.size(); ++i)
    audit_node(d->children[i], th,
               path.empty() ? std::to_string(i) : path + "." + std::to_string(i),
               phi, gamma, report);
}

}  // namespace

AuditReport audit_derivation(const DerivPtr& d, const Theory& th,
                             const CheckReport& check) {
  if (!check.accepted)
    throw InputError("audit requires a derivation accepted by the checker");
  AuditReport report;
  report.phi = check.end_formula;
  report.gamma = check.premises;
  for (const auto& f : check.axiom_formulas) report.gamma.insert(f);
  collect_derived_conclusions(d, th, report.gamma);
  audit_node(d, th, "", report.phi, report.gamma, report);
  return report;
}

std::string render_audit(const AuditReport& r) {
  std::ostringstream out;
  for (const auto& e : r.entries) {
    out << (e.path.empty() ? "." : e.path) << " {";
    bool first = true;
    for (int c : e.classes) {
      out << (first ? "" : ",") << c;
      first = false;
    }
    out << "}" << (e.violation ? " VIOLATION" : "") << ' '
        << print_formula(e.formula) << '\n';
  }
  out << "violations: " << r.violations << '\n';
  return out.str();
}

}  // namespace hylo
