#include "hylo/model.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hylo {

int Model::world_index(const std::string& id) const {
  for (size_t i = 0; i < worlds.size(); ++i)
    if (worlds[i] == id) return static_cast<int>(i);
  return -1;
}

bool eval(const Model& m, const Assignment& g, int w, const FormulaPtr& f) {
  using K = Formula::Kind;
  if (w < 0 || w >= static_cast<int>(m.worlds.size()))
    throw InputError("unknown world index " + std::to_string(w));
  switch (f->kind) {
    case K::Prop: {
      auto it = m.valuations.find(f->ident);
      return it != m.valuations.end() && it->second.count(w) != 0;
    }
    case K::Nominal: {
      auto it = g.find(f->ident);
      if (it == g.end()) throw InputError("nominal not assigned: " + f->ident);
      return w == it->second;
    }
    case K::PredAtom: {
      auto it = m.extensions.find({w, f->ident});
      return it != m.extensions.end() && it->second.count(f->terms) != 0;
    }
    case K::Bottom:
      return false;
    case K::Conj:
      return eval(m, g, w, f->children[0]) && eval(m, g, w, f->children[1]);
    case K::Impl:
      return !eval(m, g, w, f->children[0]) || eval(m, g, w, f->children[1]);
    case K::Box: {
      auto it = m.relations.find(f->ident);
      if (it == m.relations.end()) return true;  // empty relation: vacuous
      for (const auto& [from, to] : it->second)
        if (from == w && !eval(m, g, to, f->children[0])) return false;
      return true;
    }
    case K::Sat: {
      auto it = g.find(f->ident);
      if (it == g.end()) throw InputError("nominal not assigned: " + f->ident);
      return eval(m, g, it->second, f->children[0]);
    }
    case K::FVar:
    case K::AVar:
      throw InputError("cannot evaluate a pattern variable");
  }
  return false;
}

bool holds_at_all_worlds(const Model& m, const Assignment& g,
                         const FormulaPtr& f) {
  for (int w = 0; w < static_cast<int>(m.worlds.size()); ++w)
    if (!eval(m, g, w, f)) return false;
  return true;
}

std::uint64_t enum_cap_from_env() {
  if (const char* s = std::getenv("HYLO_MAX_ENUM")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultEnumCap;
}

namespace {

std::vector<Tuple> tuple_universe(const Signature& sig, int arity) {
  std::vector<Tuple> out{{}};
  std::vector<std::string> times(sig.time_consts().begin(),
                                 sig.time_consts().end());
  for (int i = 0; i < arity; ++i) {
    std::vector<Tuple> next;
    for (const auto& t : out)
      for (const auto& c : times) {
        Tuple e = t;
        e.push_back(c);
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

// Size of the (model, assignment) space for exactly n worlds; clamps at max.
std::uint64_t space_size(const Signature& sig, int n) {
  const std::uint64_t kMax = UINT64_MAX;
  std::uint64_t bits = 0;
  bits += static_cast<std::uint64_t>(sig.modalities().size()) * n * n;
  bits += static_cast<std::uint64_t>(sig.props().size()) * n;
  for (const auto& [pred, arity] : sig.predicates()) {
    std::uint64_t tuples = 1;
    for (int i = 0; i < arity; ++i) {
      if (sig.time_consts().empty()) {
        tuples = 0;
        break;
      }
      tuples *= sig.time_consts().size();
    }
    bits += tuples * n;
  }
  if (bits >= 63) return kMax;
  std::uint64_t total = std::uint64_t{1} << bits;
  for (size_t i = 0; i < sig.nominals().size(); ++i) {
    if (total > kMax / n) return kMax;
    total *= n;
  }
  return total;
}

}  // namespace

ModelEnumerator::ModelEnumerator(const Signature& sig, int max_worlds,
                                 std::uint64_t cap)
    : sig_(sig), max_worlds_(max_worlds) {
  if (max_worlds < 1) throw InputError("max_worlds must be at least 1");
  for (int n = 1; n <= max_worlds; ++n) {
    std::uint64_t sz = space_size(sig, n);
    if (sz == UINT64_MAX || total_ + sz < total_ || total_ + sz > cap)
      throw InputError("signature too large to enumerate (cap " +
                       std::to_string(cap) + "; set HYLO_MAX_ENUM to raise)");
    total_ += sz;
  }
}

void ModelEnumerator::setup(int n) {
  digits_.clear();
  radices_.clear();
  auto add = [&](std::uint64_t radix) {
    digits_.push_back(0);
    radices_.push_back(radix);
  };
  for (size_t i = 0; i < sig_.modalities().size(); ++i)
    for (int p = 0; p < n * n; ++p) add(2);
  for (size_t i = 0; i < sig_.props().size(); ++i)
    for (int w = 0; w < n; ++w) add(2);
  for (const auto& [pred, arity] : sig_.predicates()) {
    std::vector<Tuple> tuples = tuple_universe(sig_, arity);
    for (int w = 0; w < n; ++w)
      for (size_t t = 0; t < tuples.size(); ++t) add(2);
  }
  for (size_t i = 0; i < sig_.nominals().size(); ++i) add(n);
}

void ModelEnumerator::decode(Model& m, Assignment& g) const {
  m = Model{};
  g.clear();
  for (int i = 0; i < n_; ++i) m.worlds.push_back("w" + std::to_string(i));
  size_t d = 0;
  for (const auto& mod : sig_.modalities()) {
    auto& rel = m.relations[mod];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (digits_[d++]) rel.insert({i, j});
  }
  for (const auto& p : sig_.props()) {
    auto& val = m.valuations[p];
    for (int w = 0; w < n_; ++w)
      if (digits_[d++]) val.insert(w);
  }
  for (const auto& [pred, arity] : sig_.predicates()) {
    std::vector<Tuple> tuples = tuple_universe(sig_, arity);
    for (int w = 0; w < n_; ++w)
      for (const auto& t : tuples)
        if (digits_[d++]) m.extensions[{w, pred}].insert(t);
  }
  for (const auto& nom : sig_.nominals())
    g[nom] = static_cast<int>(digits_[d++]);
}

bool ModelEnumerator::next(Model& m, Assignment& g) {
  while (true) {
    if (exhausted_current_) {
      if (n_ >= max_worlds_) return false;
      setup(++n_);
      exhausted_current_ = false;
      decode(m, g);
      return true;
    }
    size_t i = 0;
    for (; i < digits_.size(); ++i) {
      if (++digits_[i] < radices_[i]) break;
      digits_[i] = 0;
    }
    if (i == digits_.size()) {
      exhausted_current_ = true;
      continue;
    }
    decode(m, g);
    return true;
  }
}

std::optional<Countermodel> find_countermodel(const FormulaPtr& f,
                                              const Signature& sig,
                                              int max_worlds,
                                              std::uint64_t cap) {
  ModelEnumerator en(sig, max_worlds, cap);
  Model m;
  Assignment g;
  while (en.next(m, g)) {
    for (int w = 0; w < static_cast<int>(m.worlds.size()); ++w)
      if (!eval(m, g, w, f)) return Countermodel{std::move(m), std::move(g), w};
  }
  return std::nullopt;
}

std::uint64_t count_soundness_violations(const Signature& sig, int max_worlds,
                                         const FormulaSet& premises,
                                         const FormulaPtr& conclusion,
                                         const FormulaSet& global_constraints,
                                         std::uint64_t cap) {
  ModelEnumerator en(sig, max_worlds, cap);
  std::uint64_t violations = 0;
  Model m;
  Assignment g;
  while (en.next(m, g)) {
    bool constrained = true;
    for (const auto& c : global_constraints)
      if (!holds_at_all_worlds(m, g, c)) {
        constrained = false;
        break;
      }
    if (!constrained) continue;
    for (int w = 0; w < static_cast<int>(m.worlds.size()); ++w) {
      bool all = true;
      for (const auto& p : premises)
        if (!eval(m, g, w, p)) {
          all = false;
          break;
        }
      if (all && !eval(m, g, w, conclusion)) ++violations;
    }
  }
  return violations;
}

namespace {

int require_world(const Model& m, const std::string& id, int lineno) {
  int w = m.world_index(id);
  if (w < 0)
    throw InputError("model line " + std::to_string(lineno) +
                     ": unknown world " + id);
  return w;
}

}  // namespace

std::pair<Model, Assignment> parse_model(const std::string& text,
                                         const Signature& sig) {
  Model m;
  Assignment g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto bad = [&](const std::string& msg) {
      throw InputError("model line " + std::to_string(lineno) + ": " + msg);
    };
    std::string tok;
    if (head == "worlds:") {
      while (ls >> tok) m.worlds.push_back(tok);
    } else if (head == "rel") {
      std::string mod;
      if (!(ls >> mod) || mod.empty() || mod.back() != ':')
        bad("rel needs '<modality>:'");
      mod.pop_back();
      if (!sig.is_modality(mod)) bad("undeclared modality " + mod);
      auto& rel = m.relations[mod];
      while (ls >> tok) {
        auto gt = tok.find('>');
        if (gt == std::string::npos) bad("relation pair needs 'w>v': " + tok);
        rel.insert({require_world(m, tok.substr(0, gt), lineno),
                    require_world(m, tok.substr(gt + 1), lineno)});
      }
    } else if (head == "val") {
      std::string prop;
      if (!(ls >> prop) || prop.empty() || prop.back() != ':')
        bad("val needs '<prop>:'");
      prop.pop_back();
      if (!sig.is_prop(prop)) bad("undeclared propositional symbol " + prop);
      auto& val = m.valuations[prop];
      while (ls >> tok) val.insert(require_world(m, tok, lineno));
    } else if (head == "ext") {
      std::string spec;
      if (!(ls >> spec) || spec.empty() || spec.back() != ':')
        bad("ext needs '<pred>@<world>:'");
      spec.pop_back();
      auto at = spec.find('@');
      if (at == std::string::npos) bad("ext needs '<pred>@<world>:'");
      std::string pred = spec.substr(0, at);
      if (!sig.is_predicate(pred)) bad("undeclared predicate " + pred);
      int w = require_world(m, spec.substr(at + 1), lineno);
      auto& ext = m.extensions[{w, pred}];
      while (ls >> tok) {
        if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
          bad("tuple needs '(t,...)': " + tok);
        Tuple tuple;
        std::string body = tok.substr(1, tok.size() - 2);
        if (!body.empty()) {
          std::istringstream ts(body);
          std::string t;
          while (std::getline(ts, t, ',')) {
            if (!sig.is_time_const(t)) bad("undeclared time constant " + t);
            tuple.push_back(t);
          }
        }
        if (static_cast<int>(tuple.size()) != sig.arity(pred))
          bad("arity mismatch in tuple for " + pred);
        ext.insert(std::move(tuple));
      }
    } else if (head == "assign:") {
      while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) bad("assignment needs 'a=w': " + tok);
        std::string nom = tok.substr(0, eq);
        if (!sig.is_nominal(nom)) bad("undeclared nominal " + nom);
        g[nom] = require_world(m, tok.substr(eq + 1), lineno);
      }
    } else {
      bad("unknown directive: " + head);
    }
  }
  if (m.worlds.empty()) throw InputError("model has no worlds");
  for (const auto& nom : sig.nominals())
    if (!g.count(nom)) throw InputError("nominal not assigned: " + nom);
  return {std::move(m), std::move(g)};
}

std::pair<Model, Assignment> load_model_file(const std::string& path,
                                             const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), sig);
}

std::string print_model(const Model& m, const Assignment& g) {
  std::ostringstream out;
  out << "worlds:";
  for (const auto& w : m.worlds) out << ' ' << w;
  out << '\n';
  for (const auto& [mod, rel] : m.relations) {
    if (rel.empty()) continue;
    out << "rel " << mod << ':';
    for (const auto& [i, j] : rel) out << ' ' << m.worlds[i] << '>' << m.worlds[j];
    out << '\n';
  }
  for (const auto& [prop, val] : m.valuations) {
    if (val.empty()) continue;
    out << "val " << prop << ':';
    for (int w : val) out << ' ' << m.worlds[w];
    out << '\n';
  }
  for (const auto& [key, tuples] : m.extensions) {
    if (tuples.empty()) continue;
    out << "ext " << key.second << '@' << m.worlds[key.first] << ':';
    for (const auto& t : tuples) {
      out << " (";
      for (size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
      out << ')';
    }
    out << '\n';
  }
  if (!g.empty()) {
    out << "assign:";
    for (const auto& [nom, w] : g) out << ' ' << nom << '=' << m.worlds[w];
    out << '\n';
  }
  return out.str();
}

}  // namespace hylo
