// Formula trees for hybrid modal logic with named box operators, satisfaction
// operators, and ground predicate atoms.  Negation and diamond are sugar:
//   ~f        == (f -> bot)
//   dia m f   == ~ box m ~ f
// Pattern variables (FVar, AVar, term variables written "?x") share the same
// node type; plain formulas contain none of them.

#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hylo/signature.hpp"

namespace hylo {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    Prop,     // ident
    Nominal,  // ident
    PredAtom, // ident = predicate symbol, terms = constants (or "?v" in patterns)
    Bottom,
    Conj,     // children[0] & children[1]
    Impl,     // children[0] -> children[1]
    Box,      // ident = modality, children[0]
    Sat,      // ident = nominal, children[0]
    FVar,     // pattern: formula metavariable, ident = name
    AVar,     // pattern: applied metavariable ?f(t), ident = name, terms = [t]
  };

  Kind kind;
  std::string ident;
  std::vector<std::string> terms;
  std::vector<FormulaPtr> children;
};

FormulaPtr mk_prop(std::string id);
FormulaPtr mk_nominal(std::string id);
FormulaPtr mk_pred(std::string sym, std::vector<std::string> terms);
FormulaPtr mk_bottom();
FormulaPtr mk_conj(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_impl(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_box(std::string modality, FormulaPtr f);
FormulaPtr mk_sat(std::string nominal, FormulaPtr f);
FormulaPtr mk_neg(FormulaPtr f);                        // f -> bot
FormulaPtr mk_dia(std::string modality, FormulaPtr f);  // ~ box m ~ f
FormulaPtr mk_fvar(std::string name);
FormulaPtr mk_avar(std::string name, std::string term);

bool equal(const FormulaPtr& a, const FormulaPtr& b);
// Total order; used for canonical sets and deterministic output.
int compare(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const {
    return compare(a, b) < 0;
  }
};
using FormulaSet = std::set<FormulaPtr, FormulaLess>;

// Sugar recognizers.
bool is_neg(const FormulaPtr& f);                // f == (g -> bot)
FormulaPtr neg_operand(const FormulaPtr& f);
bool is_dia(const FormulaPtr& f);                // f == ~ box m ~ g
std::string dia_modality(const FormulaPtr& f);
FormulaPtr dia_operand(const FormulaPtr& f);
// dia m c for a nominal c; used by the box rules.
bool is_dia_nominal(const FormulaPtr& f, std::string* modality, std::string* nominal);

bool is_satisfaction_statement(const FormulaPtr& f);

// Reflexive subformula closure.  For @a f this includes the nominal a.
FormulaSet subformulas(const FormulaPtr& f);

// True iff identifier x appears anywhere in f (nominal, @-index, symbol,
// modality name, or term).
bool occurs_in(const std::string& x, const FormulaPtr& f);

bool contains_pattern_vars(const FormulaPtr& f);

// Canonical text; parse(print(f)) == f.  Re-sugars ~ and dia.
std::string print_formula(const FormulaPtr& f);

std::string print_set(const FormulaSet& fs);  // "{f1, f2}" in canonical order

}  // namespace hylo
