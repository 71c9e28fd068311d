// Analyticity audit: labels every formula occurrence in a checked derivation
// with the occurrence classes it satisfies, relative to the end-formula and
// the undischarged premises.

#pragma once

#include <set>
#include <string>
#include <vector>

#include "hylo/checker.hpp"

namespace hylo {

// Occurrence classes, relative to conclusion phi and premise set Gamma:
//   1  @a psi where psi is a subformula of phi or Gamma, a nominal, or a
//      diamond of a nominal
//   2  the occurrence itself is such a subformula, nominal, or diamond of
//      a nominal
//   3  a nominal
//   4  @a ~p or ~p for a propositional letter p occurring in phi or Gamma
//   5  @a bot or bot
std::set<int> classify_occurrence(const FormulaPtr& occurrence,
                                  const FormulaPtr& phi,
                                  const FormulaSet& gamma);

struct AuditEntry {
  std::string path;
  FormulaPtr formula;
  std::set<int> classes;
  bool violation = false;  // no class applies
};

struct AuditReport {
  FormulaPtr phi;
  FormulaSet gamma;
  std::vector<AuditEntry> entries;
  int violations = 0;
};

// Requires an accepted derivation (pass the report from check_derivation).
// Gamma is the undischarged premises plus axiom/schema-instance formulas;
// conclusions of theory-derived rules extend Gamma as well.
AuditReport audit_derivation(const DerivPtr& d, const Theory& th,
                             const CheckReport& check);

std::string render_audit(const AuditReport& r);  // "<path> <class-set> <formula>"

}  // namespace hylo
