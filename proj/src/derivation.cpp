#include "hylo/derivation.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "hylo/parser.hpp"

namespace hylo {

DerivPtr mk_assume(int label, FormulaPtr f) {
  auto d = std::make_shared<Derivation>();
  d->kind = Derivation::Kind::Assumption;
  d->label = label;
  d->formula = std::move(f);
  return d;
}

DerivPtr mk_axiom_leaf(std::string name) {
  auto d = std::make_shared<Derivation>();
  d->kind = Derivation::Kind::Axiom;
  d->name = std::move(name);
  return d;
}

DerivPtr mk_schema_leaf(std::string name, FormulaPtr instance) {
  auto d = std::make_shared<Derivation>();
  d->kind = Derivation::Kind::Schema;
  d->name = std::move(name);
  d->formula = std::move(instance);
  return d;
}

DerivPtr mk_rule(std::string id, FormulaPtr conclusion,
                 std::vector<int> discharge, std::vector<DerivPtr> children,
                 std::string term_nominal) {
  auto d = std::make_shared<Derivation>();
  d->kind = Derivation::Kind::Rule;
  d->name = std::move(id);
  d->formula = std::move(conclusion);
  d->discharge = std::move(discharge);
  d->children = std::move(children);
  d->term_nominal = std::move(term_nominal);
  return d;
}

namespace {

// Minimal s-expression reader.
struct SExpr {
  enum class Type { List, Atom, String, Int };
  Type type;
  std::string text;
  long long num = 0;
  std::vector<SExpr> items;
};

class SExprReader {
 public:
  explicit SExprReader(const std::string& text) : text_(text) {}

  SExpr read() {
    skip_ws();
    SExpr e = read_one();
    skip_ws();
    if (i_ != text_.size()) throw InputError("trailing input in proof file");
    return e;
  }

 private:
  SExpr read_one() {
    skip_ws();
    if (i_ >= text_.size()) throw InputError("unexpected end of proof file");
    char c = text_[i_];
    if (c == '(') {
      ++i_;
      SExpr list{SExpr::Type::List, "", 0, {}};
      while (true) {
        skip_ws();
        if (i_ >= text_.size()) throw InputError("unbalanced '(' in proof file");
        if (text_[i_] == ')') {
          ++i_;
          return list;
        }
        list.items.push_back(read_one());
      }
    }
    if (c == '"') {
      ++i_;
      std::string s;
      while (i_ < text_.size() && text_[i_] != '"') s += text_[i_++];
      if (i_ >= text_.size()) throw InputError("unterminated string literal");
      ++i_;
      return {SExpr::Type::String, std::move(s), 0, {}};
    }
    size_t start = i_;
    while (i_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[i_])) &&
           text_[i_] != '(' && text_[i_] != ')' && text_[i_] != '"')
      ++i_;
    std::string atom = text_.substr(start, i_ - start);
    if (atom.empty()) throw InputError("unexpected character in proof file");
    if (atom.find_first_not_of("0123456789") == std::string::npos)
      return {SExpr::Type::Int, atom, std::stoll(atom), {}};
    return {SExpr::Type::Atom, std::move(atom), 0, {}};
  }

  void skip_ws() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else if (c == ';') {  // comment to end of line
        while (i_ < text_.size() && text_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  size_t i_ = 0;
};

bool is_list_headed(const SExpr& e, const std::string& head) {
  return e.type == SExpr::Type::List && !e.items.empty() &&
         e.items[0].type == SExpr::Type::Atom && e.items[0].text == head;
}

DerivPtr build_node(const SExpr& e, const Theory& th) {
  if (e.type != SExpr::Type::List || e.items.empty() ||
      e.items[0].type != SExpr::Type::Atom)
    throw InputError("proof node must be a list headed by a symbol");
  const std::string& head = e.items[0].text;
  if (head == "assume") {
    if (e.items.size() != 3 || e.items[1].type != SExpr::Type::Int ||
        e.items[2].type != SExpr::Type::String)
      throw InputError("assume needs (assume <label> \"<formula>\")");
    if (e.items[1].num <= 0) throw InputError("assumption labels are positive");
    return mk_assume(static_cast<int>(e.items[1].num),
                     parse_formula(e.items[2].text, th.signature()));
  }
  if (head == "axiom") {
    if (e.items.size() != 2 || e.items[1].type != SExpr::Type::String)
      throw InputError("axiom needs (axiom \"<name>\")");
    return mk_axiom_leaf(e.items[1].text);
  }
  if (head == "schema") {
    if (e.items.size() != 3 || e.items[1].type != SExpr::Type::String ||
        e.items[2].type != SExpr::Type::String)
      throw InputError("schema needs (schema \"<name>\" \"<instance>\")");
    return mk_schema_leaf(e.items[1].text,
                          parse_formula(e.items[2].text, th.signature()));
  }
  if (head == "rule") {
    if (e.items.size() < 4 || e.items[1].type != SExpr::Type::Atom ||
        e.items[2].type != SExpr::Type::String ||
        !is_list_headed(e.items[3], "discharge"))
      throw InputError(
          "rule needs (rule <id> \"<conclusion>\" (discharge ...) ...)");
    std::string id = e.items[1].text;
    FormulaPtr conclusion = parse_formula(e.items[2].text, th.signature());
    std::vector<int> discharge;
    for (size_t i = 1; i < e.items[3].items.size(); ++i) {
      if (e.items[3].items[i].type != SExpr::Type::Int)
        throw InputError("discharge labels must be integers");
      discharge.push_back(static_cast<int>(e.items[3].items[i].num));
    }
    size_t next = 4;
    std::string term_nominal;
    if (next < e.items.size() && is_list_headed(e.items[next], "nominal")) {
      const SExpr& nl = e.items[next];
      if (nl.items.size() != 2 || nl.items[1].type != SExpr::Type::Atom)
        throw InputError("(nominal <ident>) expected");
      term_nominal = nl.items[1].text;
      ++next;
    }
    if (id == "term" && term_nominal.empty())
      throw InputError("term rule needs (nominal <ident>)");
    std::vector<DerivPtr> children;
    for (; next < e.items.size(); ++next)
      children.push_back(build_node(e.items[next], th));
    return mk_rule(std::move(id), std::move(conclusion), std::move(discharge),
                   std::move(children), std::move(term_nominal));
  }
  throw InputError("unknown proof node head: " + head);
}

}  // namespace

ProofFile parse_proof(const std::string& text, const Theory& th) {
  SExpr top = SExprReader(text).read();
  if (!is_list_headed(top, "proof") || top.items.size() < 2)
    throw InputError("proof file must be one (proof ...) form");
  ProofFile p;
  size_t next = 1;
  if (is_list_headed(top.items[next], "theory")) {
    const SExpr& t = top.items[next];
    if (t.items.size() != 2 || t.items[1].type != SExpr::Type::String)
      throw InputError("(theory \"<file>\") expected");
    p.theory_path = t.items[1].text;
    ++next;
  }
  if (next + 1 != top.items.size())
    throw InputError("proof form must contain exactly one derivation");
  p.root = build_node(top.items[next], th);
  return p;
}

std::optional<std::string> peek_theory_path(const std::string& text) {
  SExpr top = SExprReader(text).read();
  if (is_list_headed(top, "proof") && top.items.size() >= 2 &&
      is_list_headed(top.items[1], "theory") && top.items[1].items.size() == 2 &&
      top.items[1].items[1].type == SExpr::Type::String)
    return top.items[1].items[1].text;
  return std::nullopt;
}

ProofFile load_proof_file(const std::string& path, const Theory& th) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open proof file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_proof(buf.str(), th);
}

namespace {

void serialize_node(const DerivPtr& d, int depth, std::ostream& out) {
  std::string ind(2 * depth, ' ');
  switch (d->kind) {
    case Derivation::Kind::Assumption:
      out << ind << "(assume " << d->label << " \""
          << print_formula(d->formula) << "\")";
      return;
    case Derivation::Kind::Axiom:
      out << ind << "(axiom \"" << d->name << "\")";
      return;
    case Derivation::Kind::Schema:
      out << ind << "(schema \"" << d->name << "\" \""
          << print_formula(d->formula) << "\")";
      return;
    case Derivation::Kind::Rule:
      break;
  }
  out << ind << "(rule " << d->name << " \"" << print_formula(d->formula)
      << "\" (discharge";
  for (int l : d->discharge) out << ' ' << l;
  out << ')';
  if (!d->term_nominal.empty()) out << " (nominal " << d->term_nominal << ')';
  for (const auto& c : d->children) {
    out << '\n';
    serialize_node(c, depth + 1, out);
  }
  out << ')';
}

}  // namespace

std::string serialize_proof(const ProofFile& p) {
  std::ostringstream out;
  out << "(proof";
  if (p.theory_path) out << " (theory \"" << *p.theory_path << "\")";
  out << '\n';
  serialize_node(p.root, 1, out);
  out << ")\n";
  return out.str();
}

namespace {

void walk(const DerivPtr& d, std::map<int, FormulaPtr>& parcels,
          std::map<int, FormulaPtr>& undis,
          const std::vector<const Derivation*>& ancestors) {
  if (d->kind == Derivation::Kind::Assumption) {
    auto [it, fresh] = parcels.emplace(d->label, d->formula);
    if (!fresh && !equal(it->second, d->formula))
      throw InputError("label " + std::to_string(d->label) +
                       " annotates two different formulas");
    bool discharged = false;
    for (const Derivation* a : ancestors)
      for (int l : a->discharge)
        if (l == d->label) discharged = true;
    if (!discharged) undis.emplace(d->label, d->formula);
    return;
  }
  auto next = ancestors;
  if (d->kind == Derivation::Kind::Rule) next.push_back(d.get());
  for (const auto& c : d->children) walk(c, parcels, undis, next);
}

}  // namespace

std::vector<std::pair<int, FormulaPtr>> collect_undischarged(const DerivPtr& d) {
  std::map<int, FormulaPtr> parcels, undis;
  walk(d, parcels, undis, {});
  return {undis.begin(), undis.end()};
}

}  // namespace hylo
