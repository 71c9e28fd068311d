// Derivation trees and the s-expression proof file format.
//
//   (proof (theory "<file>")?
//     node)
//   node := (assume <label> "<formula>")
//         | (axiom "<name>")
//         | (schema "<name>" "<instance>")
//         | (rule <rule-id> "<conclusion>" (discharge <label>*) node*)
//   rule "term" additionally carries (nominal <ident>) before its children.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hylo/formula.hpp"
#include "hylo/theory.hpp"

namespace hylo {

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  enum class Kind { Assumption, Axiom, Schema, Rule };

  Kind kind;
  int label = 0;             // Assumption
  std::string name;          // axiom/schema name, or rule id ("impI", "boxI.D", "R3")
  FormulaPtr formula;        // assumption formula, schema instance, or conclusion;
                             // null for Axiom (resolved against the theory)
  std::string term_nominal;  // (Term): the nominal whose parcel is discharged
  std::vector<int> discharge;
  std::vector<DerivPtr> children;
};

DerivPtr mk_assume(int label, FormulaPtr f);
DerivPtr mk_axiom_leaf(std::string name);
DerivPtr mk_schema_leaf(std::string name, FormulaPtr instance);
DerivPtr mk_rule(std::string id, FormulaPtr conclusion,
                 std::vector<int> discharge, std::vector<DerivPtr> children,
                 std::string term_nominal = "");

struct ProofFile {
  std::optional<std::string> theory_path;
  DerivPtr root;
};

// Formulas in the proof text are parsed against the theory's signature.
ProofFile parse_proof(const std::string& text, const Theory& th);

// Reads the (theory "...") reference without resolving formulas.
std::optional<std::string> peek_theory_path(const std::string& text);

ProofFile load_proof_file(const std::string& path, const Theory& th);

// Canonical serialization; parse_proof(serialize_proof(p)) round-trips.
std::string serialize_proof(const ProofFile& p);

// All assumption leaves not discharged by any rule instance in d.
// Throws InputError when two leaves share a label but not a formula.
std::vector<std::pair<int, FormulaPtr>> collect_undischarged(const DerivPtr& d);

}  // namespace hylo
