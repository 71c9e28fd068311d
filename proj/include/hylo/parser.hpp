// Concrete-syntax parser for formulas and rule/schema patterns.
//
//   formula := "bot" | ident | ident "(" term-list ")" | "~" formula
//            | "(" formula "&" formula ")" | "(" formula "->" formula ")"
//            | "box" ident formula | "dia" ident formula | "@" ident formula
//            | <modality> formula            ; bare modality application
//
// Unary operators bind tighter than & which binds tighter than ->;
// -> is right-associative, & left-associative.  Patterns additionally
// allow ?name (formula var), ?name(t) (applied var), and ?t in term position.

#pragma once

#include <string>

#include "hylo/formula.hpp"
#include "hylo/signature.hpp"

namespace hylo {

struct ParseError : InputError {
  ParseError(const std::string& msg, size_t pos)
      : InputError(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  size_t position;
};

FormulaPtr parse_formula(const std::string& text, const Signature& sig);
FormulaPtr parse_pattern(const std::string& text, const Signature& sig);

}  // namespace hylo
