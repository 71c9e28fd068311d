#include "hylo/theory.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hylo/parser.hpp"

namespace hylo {

namespace {

bool is_term_var(const std::string& t) { return !t.empty() && t[0] == '?'; }

bool bind_term(const std::string& pat_term, const std::string& term,
               Subst& subst) {
  if (!is_term_var(pat_term)) return pat_term == term;
  std::string name = pat_term.substr(1);
  auto [it, fresh] = subst.terms.emplace(name, term);
  return fresh || it->second == term;
}

}  // namespace

bool match_into(const FormulaPtr& pat, const FormulaPtr& f, Subst& subst) {
  using K = Formula::Kind;
  switch (pat->kind) {
    case K::FVar: {
      auto [it, fresh] = subst.formulas.emplace(pat->ident, f);
      return fresh || equal(it->second, f);
    }
    case K::AVar: {
      if (f->kind != K::PredAtom || f->terms.size() != 1) return false;
      auto [it, fresh] = subst.preds.emplace(pat->ident, f->ident);
      if (!fresh && it->second != f->ident) return false;
      return bind_term(pat->terms[0], f->terms[0], subst);
    }
    case K::PredAtom: {
      if (f->kind != K::PredAtom || f->ident != pat->ident ||
          f->terms.size() != pat->terms.size())
        return false;
      for (size_t i = 0; i < pat->terms.size(); ++i)
        if (!bind_term(pat->terms[i], f->terms[i], subst)) return false;
      return true;
    }
    default:
      break;
  }
  if (f->kind != pat->kind || f->ident != pat->ident ||
      f->children.size() != pat->children.size())
    return false;
  for (size_t i = 0; i < pat->children.size(); ++i)
    if (!match_into(pat->children[i], f->children[i], subst)) return false;
  return true;
}

std::optional<Subst> match_schema(const FormulaPtr& pat, const FormulaPtr& f) {
  Subst subst;
  if (match_into(pat, f, subst)) return subst;
  return std::nullopt;
}

namespace {

std::string resolve_term(const Subst& subst, const std::string& t) {
  if (!is_term_var(t)) return t;
  auto it = subst.terms.find(t.substr(1));
  if (it == subst.terms.end())
    throw InputError("unbound term variable ?" + t.substr(1));
  return it->second;
}

}  // namespace

FormulaPtr apply_subst(const Subst& subst, const FormulaPtr& pat) {
  using K = Formula::Kind;
  switch (pat->kind) {
    case K::FVar: {
      auto it = subst.formulas.find(pat->ident);
      if (it == subst.formulas.end())
        throw InputError("unbound formula variable ?" + pat->ident);
      return it->second;
    }
    case K::AVar: {
      auto it = subst.preds.find(pat->ident);
      if (it == subst.preds.end())
        throw InputError("unbound applied variable ?" + pat->ident);
      return mk_pred(it->second, {resolve_term(subst, pat->terms[0])});
    }
    case K::PredAtom: {
      std::vector<std::string> terms;
      for (const auto& t : pat->terms) terms.push_back(resolve_term(subst, t));
      return mk_pred(pat->ident, std::move(terms));
    }
    default:
      break;
  }
  if (pat->children.empty()) return pat;
  Formula copy = *pat;
  for (auto& c : copy.children) c = apply_subst(subst, c);
  return std::make_shared<Formula>(std::move(copy));
}

namespace {

const std::set<std::string> kBuiltinRuleIds = {
    "andI", "andE1", "andE2", "impI", "impE", "raa",
    "satI", "satE",  "boxI",  "boxE", "term", "name"};

void check_rule_name(const std::string& name) {
  if (kBuiltinRuleIds.count(name) || name.find('.') != std::string::npos)
    throw InputError("rule name clashes with a built-in rule id: " + name);
}

// Each pattern variable must keep one sort (formula / applied / term)
// throughout a rule or schema.
void collect_var_sorts(const FormulaPtr& pat,
                       std::map<std::string, char>& sorts) {
  auto record = [&](const std::string& name, char sort) {
    auto [it, fresh] = sorts.emplace(name, sort);
    if (!fresh && it->second != sort)
      throw InputError("pattern variable ?" + name + " used with two sorts");
  };
  if (pat->kind == Formula::Kind::FVar) record(pat->ident, 'f');
  if (pat->kind == Formula::Kind::AVar) record(pat->ident, 'a');
  for (const auto& t : pat->terms)
    if (is_term_var(t)) record(t.substr(1), 't');
  for (const auto& c : pat->children) collect_var_sorts(c, sorts);
}

// Splits on a separator at paren depth zero.
std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

void Theory::add_axiom(const std::string& name, FormulaPtr f) {
  if (contains_pattern_vars(f))
    throw InputError("axiom " + name + " must be a ground formula");
  if (!axioms_.emplace(name, std::move(f)).second)
    throw InputError("duplicate axiom name: " + name);
}

void Theory::add_schema(const std::string& name, FormulaPtr pat) {
  std::map<std::string, char> sorts;
  collect_var_sorts(pat, sorts);
  if (!schemas_.emplace(name, std::move(pat)).second)
    throw InputError("duplicate schema name: " + name);
}

void Theory::add_rule(const std::string& name, DerivedRule rule) {
  check_rule_name(name);
  std::map<std::string, char> sorts;
  for (const auto& p : rule.premises) collect_var_sorts(p, sorts);
  collect_var_sorts(rule.conclusion, sorts);
  if (!rules_.emplace(name, std::move(rule)).second)
    throw InputError("duplicate rule name: " + name);
}

const FormulaPtr* Theory::axiom(const std::string& name) const {
  auto it = axioms_.find(name);
  return it == axioms_.end() ? nullptr : &it->second;
}

const FormulaPtr* Theory::schema(const std::string& name) const {
  auto it = schemas_.find(name);
  return it == schemas_.end() ? nullptr : &it->second;
}

const DerivedRule* Theory::rule(const std::string& name) const {
  auto it = rules_.find(name);
  return it == rules_.end() ? nullptr : &it->second;
}

std::optional<FormulaPtr> Theory::instantiate_rule(
    const std::string& name, const std::vector<FormulaPtr>& premises) const {
  const DerivedRule* r = rule(name);
  if (!r) throw InputError("unknown derived rule: " + name);
  if (premises.size() != r->premises.size())
    throw InputError("rule " + name + " expects " +
                     std::to_string(r->premises.size()) + " premises, got " +
                     std::to_string(premises.size()));
  Subst subst;
  for (size_t i = 0; i < premises.size(); ++i)
    if (!match_into(r->premises[i], premises[i], subst)) return std::nullopt;
  return apply_subst(subst, r->conclusion);
}

Theory Theory::load(const std::string& text, const std::string& base_dir) {
  // First pass: assemble the signature (embedded lines and/or a referenced
  // file), so formulas in the second pass parse against it.
  std::string sig_text;
  std::istringstream first(text);
  std::string line;
  while (std::getline(first, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "signature:") {
      std::string path;
      if (!(ls >> path)) throw InputError("signature: needs a path");
      std::ifstream in(std::filesystem::path(base_dir) / path);
      if (!in) throw InputError("cannot open signature file: " + path);
      std::ostringstream buf;
      buf << in.rdbuf();
      sig_text += buf.str() + "\n";
    } else if (head == "prop:" || head == "nom:" || head == "mod:" ||
               head == "pred:" || head == "time:" || head == "rigid:") {
      sig_text += line + "\n";
    }
  }
  Theory th(Signature::parse(sig_text));

  std::istringstream second(text);
  int lineno = 0;
  while (std::getline(second, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto bad = [&](const std::string& msg) {
      throw InputError("theory line " + std::to_string(lineno) + ": " + msg);
    };
    if (head == "signature:" || head == "prop:" || head == "nom:" ||
        head == "mod:" || head == "pred:" || head == "time:" ||
        head == "rigid:")
      continue;
    if (head == "axiom" || head == "schema" || head == "rule") {
      std::string rest;
      std::getline(ls, rest);
      auto colon = rest.find(':');
      if (colon == std::string::npos) bad(head + " needs '<name>: <body>'");
      std::istringstream ns(rest.substr(0, colon));
      std::string name;
      if (!(ns >> name)) bad(head + " needs a name");
      std::string extra;
      if (ns >> extra) bad("bad " + head + " name");
      std::string body = rest.substr(colon + 1);
      if (head == "axiom") {
        th.add_axiom(name, parse_formula(body, th.sig_));
      } else if (head == "schema") {
        th.add_schema(name, parse_pattern(body, th.sig_));
      } else {
        auto sides = split_top_level(body, '=');
        // "=>": split on '=' leaves '>' prefixing the conclusion
        if (sides.size() != 2 || sides[1].empty() || sides[1][0] != '>')
          bad("rule needs 'premises => conclusion'");
        DerivedRule r;
        for (const auto& p : split_top_level(sides[0], ','))
          r.premises.push_back(parse_pattern(p, th.sig_));
        r.conclusion = parse_pattern(sides[1].substr(1), th.sig_);
        th.add_rule(name, std::move(r));
      }
    } else if (head == "option") {
      std::string key, val;
      ls >> key >> val;
      if (key != "liberalized-term:" || (val != "on" && val != "off"))
        bad("unknown option: " + key + " " + val);
      th.liberalized_term_ = (val == "on");
    } else {
      bad("unknown directive: " + head);
    }
  }
  return th;
}

Theory Theory::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open theory file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str(), std::filesystem::path(path).parent_path().string());
}

bool is_term_dischargeable(const FormulaPtr& f, const Theory& th) {
  if (is_satisfaction_statement(f)) return true;
  return th.liberalized_term() && f->kind == Formula::Kind::PredAtom &&
         th.signature().is_rigid(f->ident);
}

}  // namespace hylo
