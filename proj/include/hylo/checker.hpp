// The proof kernel: validates every rule instance, side condition, and the
// discharge/parcel discipline of a derivation against a theory.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hylo/derivation.hpp"
#include "hylo/theory.hpp"

namespace hylo {

enum class ErrorKind {
  ShapeMismatch,
  SideConditionViolation,
  DischargeError,
  UnknownAxiom,
  SchemaMismatch,
  ParcelError,
};

const char* error_kind_name(ErrorKind k);

struct Diagnostic {
  std::string path;  // child indices joined by '.', "" for the root
  std::string rule;
  ErrorKind kind;
  std::string message;
};

struct CheckReport {
  bool accepted = false;
  FormulaPtr end_formula;
  // Gamma: undischarged premises, labels collapsed away.
  FormulaSet premises;
  std::vector<std::pair<int, FormulaPtr>> undischarged;
  // Axiom and schema-instance leaf formulas, listed apart from Gamma.
  FormulaSet axiom_formulas;
  std::vector<Diagnostic> diagnostics;
};

CheckReport check_derivation(const DerivPtr& d, const Theory& th);

// Undischarged assumptions of one subderivation, keyed by parcel label.
using UndischargedMap = std::map<int, FormulaPtr>;

// Single-step legality check: children carry their already-verified end
// formulas and undischarged maps.  Returns the first applicable diagnostic,
// or nullopt when the instance is legal.
std::optional<Diagnostic> check_rule_instance(
    const std::string& rule, const FormulaPtr& conclusion,
    const std::vector<std::pair<FormulaPtr, UndischargedMap>>& children,
    const std::vector<int>& discharge, const Theory& th,
    const std::string& term_nominal = "");

}  // namespace hylo
