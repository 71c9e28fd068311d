#include "hylo/formula.hpp"

#include <sstream>

namespace hylo {

namespace {

FormulaPtr node(Formula f) { return std::make_shared<Formula>(std::move(f)); }

}  // namespace

FormulaPtr mk_prop(std::string id) {
  return node({Formula::Kind::Prop, std::move(id), {}, {}});
}
FormulaPtr mk_nominal(std::string id) {
  return node({Formula::Kind::Nominal, std::move(id), {}, {}});
}
FormulaPtr mk_pred(std::string sym, std::vector<std::string> terms) {
  return node({Formula::Kind::PredAtom, std::move(sym), std::move(terms), {}});
}
FormulaPtr mk_bottom() { return node({Formula::Kind::Bottom, "", {}, {}}); }
FormulaPtr mk_conj(FormulaPtr a, FormulaPtr b) {
  return node({Formula::Kind::Conj, "", {}, {std::move(a), std::move(b)}});
}
FormulaPtr mk_impl(FormulaPtr a, FormulaPtr b) {
  return node({Formula::Kind::Impl, "", {}, {std::move(a), std::move(b)}});
}
FormulaPtr mk_box(std::string modality, FormulaPtr f) {
  return node({Formula::Kind::Box, std::move(modality), {}, {std::move(f)}});
}
FormulaPtr mk_sat(std::string nominal, FormulaPtr f) {
  return node({Formula::Kind::Sat, std::move(nominal), {}, {std::move(f)}});
}
FormulaPtr mk_neg(FormulaPtr f) { return mk_impl(std::move(f), mk_bottom()); }
FormulaPtr mk_dia(std::string modality, FormulaPtr f) {
  return mk_neg(mk_box(std::move(modality), mk_neg(std::move(f))));
}
FormulaPtr mk_fvar(std::string name) {
  return node({Formula::Kind::FVar, std::move(name), {}, {}});
}
FormulaPtr mk_avar(std::string name, std::string term) {
  return node({Formula::Kind::AVar, std::move(name), {std::move(term)}, {}});
}

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (int c = a->ident.compare(b->ident); c != 0) return c < 0 ? -1 : 1;
  if (a->terms != b->terms) return a->terms < b->terms ? -1 : 1;
  if (a->children.size() != b->children.size())
    return a->children.size() < b->children.size() ? -1 : 1;
  for (size_t i = 0; i < a->children.size(); ++i)
    if (int c = compare(a->children[i], b->children[i]); c != 0) return c;
  return 0;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

bool is_neg(const FormulaPtr& f) {
  return f->kind == Formula::Kind::Impl &&
         f->children[1]->kind == Formula::Kind::Bottom;
}

FormulaPtr neg_operand(const FormulaPtr& f) { return f->children[0]; }

bool is_dia(const FormulaPtr& f) {
  if (!is_neg(f)) return false;
  const auto& g = f->children[0];
  return g->kind == Formula::Kind::Box && is_neg(g->children[0]);
}

std::string dia_modality(const FormulaPtr& f) { return f->children[0]->ident; }

FormulaPtr dia_operand(const FormulaPtr& f) {
  return f->children[0]->children[0]->children[0];
}

bool is_dia_nominal(const FormulaPtr& f, std::string* modality,
                    std::string* nominal) {
  if (!is_dia(f)) return false;
  FormulaPtr op = dia_operand(f);
  if (op->kind != Formula::Kind::Nominal) return false;
  if (modality) *modality = dia_modality(f);
  if (nominal) *nominal = op->ident;
  return true;
}

bool is_satisfaction_statement(const FormulaPtr& f) {
  return f->kind == Formula::Kind::Sat;
}

namespace {

void collect_sub(const FormulaPtr& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  if (f->kind == Formula::Kind::Sat) out.insert(mk_nominal(f->ident));
  for (const auto& c : f->children) collect_sub(c, out);
}

}  // namespace

FormulaSet subformulas(const FormulaPtr& f) {
  FormulaSet out;
  collect_sub(f, out);
  return out;
}

bool occurs_in(const std::string& x, const FormulaPtr& f) {
  if (f->ident == x) return true;
  for (const auto& t : f->terms)
    if (t == x) return true;
  for (const auto& c : f->children)
    if (occurs_in(x, c)) return true;
  return false;
}

bool contains_pattern_vars(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::FVar || f->kind == Formula::Kind::AVar)
    return true;
  for (const auto& t : f->terms)
    if (!t.empty() && t[0] == '?') return true;
  for (const auto& c : f->children)
    if (contains_pattern_vars(c)) return true;
  return false;
}

namespace {

void print_rec(const FormulaPtr& f, std::ostream& out);

// Operands of unary operators: atoms and negations go bare, box/dia/@ get
// parentheses, binary forms bring their own.
void print_operand(const FormulaPtr& f, std::ostream& out) {
  bool parens = f->kind == Formula::Kind::Box ||
                f->kind == Formula::Kind::Sat || is_dia(f);
  if (parens) out << '(';
  print_rec(f, out);
  if (parens) out << ')';
}

void print_rec(const FormulaPtr& f, std::ostream& out) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Prop:
    case K::Nominal:
      out << f->ident;
      break;
    case K::FVar:
      out << '?' << f->ident;
      break;
    case K::AVar:
      out << '?' << f->ident << '(' << f->terms[0] << ')';
      break;
    case K::PredAtom: {
      out << f->ident << '(';
      for (size_t i = 0; i < f->terms.size(); ++i)
        out << (i ? "," : "") << f->terms[i];
      out << ')';
      break;
    }
    case K::Bottom:
      out << "bot";
      break;
    case K::Conj:
      out << '(';
      print_rec(f->children[0], out);
      out << " & ";
      print_rec(f->children[1], out);
      out << ')';
      break;
    case K::Impl:
      if (is_dia(f)) {
        out << "dia " << dia_modality(f) << ' ';
        print_operand(dia_operand(f), out);
      } else if (is_neg(f)) {
        out << '~';
        print_operand(f->children[0], out);
      } else {
        out << '(';
        print_rec(f->children[0], out);
        out << " -> ";
        print_rec(f->children[1], out);
        out << ')';
      }
      break;
    case K::Box:
      if (f->ident == "box")
        out << "box ";
      else
        out << f->ident << ' ';
      print_operand(f->children[0], out);
      break;
    case K::Sat:
      out << '@' << f->ident << ' ';
      print_operand(f->children[0], out);
      break;
  }
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::ostringstream out;
  print_rec(f, out);
  return out.str();
}

std::string print_set(const FormulaSet& fs) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& f : fs) {
    if (!first) out << ", ";
    first = false;
    out << print_formula(f);
  }
  out << '}';
  return out.str();
}

}  // namespace hylo
