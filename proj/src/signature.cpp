#include "hylo/signature.hpp"

#include <fstream>
#include <sstream>

namespace hylo {

namespace {

bool reserved_word(const std::string& id) {
  return id == "bot" || id == "dia";
}

}  // namespace

void Signature::check_fresh(const std::string& id) const {
  if (id.empty()) throw InputError("empty identifier");
  if (reserved_word(id)) throw InputError("reserved word cannot be declared: " + id);
  // The five identifier sets must be pairwise disjoint.  "box" is allowed as
  // a modality name (and only there) despite also being a keyword.
  if (kind_of(id) != SymbolKind::Unknown)
    throw InputError("identifier declared twice or in two sorts: " + id);
}

void Signature::declare_prop(const std::string& id) {
  if (id == "box") throw InputError("'box' may only be a modality name");
  check_fresh(id);
  props_.insert(id);
}

void Signature::declare_nominal(const std::string& id) {
  if (id == "box") throw InputError("'box' may only be a modality name");
  check_fresh(id);
  noms_.insert(id);
}

void Signature::declare_modality(const std::string& id) {
  check_fresh(id);
  mods_.insert(id);
}

void Signature::declare_predicate(const std::string& id, int arity) {
  if (id == "box") throw InputError("'box' may only be a modality name");
  check_fresh(id);
  if (arity < 0) throw InputError("negative arity for " + id);
  preds_[id] = arity;
}

void Signature::declare_time_const(const std::string& id) {
  if (id == "box") throw InputError("'box' may only be a modality name");
  check_fresh(id);
  times_.insert(id);
}

void Signature::declare_rigid(const std::string& pred) {
  if (!is_predicate(pred))
    throw InputError("rigid atom names an undeclared predicate: " + pred);
  rigid_.insert(pred);
}

int Signature::arity(const std::string& pred) const {
  auto it = preds_.find(pred);
  if (it == preds_.end()) throw InputError("undeclared predicate: " + pred);
  return it->second;
}

SymbolKind Signature::kind_of(const std::string& id) const {
  if (props_.count(id)) return SymbolKind::Prop;
  if (noms_.count(id)) return SymbolKind::Nominal;
  if (mods_.count(id)) return SymbolKind::Modality;
  if (preds_.count(id)) return SymbolKind::Predicate;
  if (times_.count(id)) return SymbolKind::TimeConst;
  return SymbolKind::Unknown;
}

Signature Signature::parse(const std::string& text) {
  Signature sig;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::set<std::string> pending_rigid;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto bad = [&](const std::string& msg) {
      throw InputError("signature line " + std::to_string(lineno) + ": " + msg);
    };
    std::string tok;
    if (head == "prop:") {
      while (ls >> tok) sig.declare_prop(tok);
    } else if (head == "nom:") {
      while (ls >> tok) sig.declare_nominal(tok);
    } else if (head == "mod:") {
      while (ls >> tok) sig.declare_modality(tok);
    } else if (head == "pred:") {
      while (ls >> tok) {
        auto slash = tok.find('/');
        if (slash == std::string::npos) bad("predicate needs /arity: " + tok);
        try {
          sig.declare_predicate(tok.substr(0, slash),
                                std::stoi(tok.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
          bad("bad arity in " + tok);
        }
      }
    } else if (head == "time:") {
      while (ls >> tok) sig.declare_time_const(tok);
    } else if (head == "rigid:") {
      while (ls >> tok) pending_rigid.insert(tok);  // preds may follow later
    } else {
      bad("unknown directive: " + head);
    }
  }
  for (const auto& r : pending_rigid) sig.declare_rigid(r);
  return sig;
}

Signature Signature::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open signature file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Signature::to_text() const {
  std::ostringstream out;
  auto emit = [&](const char* head, const std::set<std::string>& ids) {
    if (ids.empty()) return;
    out << head;
    for (const auto& id : ids) out << ' ' << id;
    out << '\n';
  };
  emit("prop:", props_);
  emit("nom:", noms_);
  emit("mod:", mods_);
  if (!preds_.empty()) {
    out << "pred:";
    for (const auto& [id, k] : preds_) out << ' ' << id << '/' << k;
    out << '\n';
  }
  emit("time:", times_);
  emit("rigid:", rigid_);
  return out.str();
}

}  // namespace hylo
