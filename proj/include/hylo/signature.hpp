// Declared vocabularies: propositional symbols, nominals, modality names,
// predicate symbols with arities, time constants, and rigid atoms.

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace hylo {

// Thrown on malformed signature/theory/model/proof input text.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SymbolKind { Prop, Nominal, Modality, Predicate, TimeConst, Unknown };

class Signature {
 public:
  void declare_prop(const std::string& id);
  void declare_nominal(const std::string& id);
  void declare_modality(const std::string& id);
  void declare_predicate(const std::string& id, int arity);
  void declare_time_const(const std::string& id);
  void declare_rigid(const std::string& pred);

  bool is_prop(const std::string& id) const { return props_.count(id) != 0; }
  bool is_nominal(const std::string& id) const { return noms_.count(id) != 0; }
  bool is_modality(const std::string& id) const { return mods_.count(id) != 0; }
  bool is_predicate(const std::string& id) const { return preds_.count(id) != 0; }
  bool is_time_const(const std::string& id) const { return times_.count(id) != 0; }
  bool is_rigid(const std::string& pred) const { return rigid_.count(pred) != 0; }

  int arity(const std::string& pred) const;
  SymbolKind kind_of(const std::string& id) const;

  const std::set<std::string>& props() const { return props_; }
  const std::set<std::string>& nominals() const { return noms_; }
  const std::set<std::string>& modalities() const { return mods_; }
  const std::map<std::string, int>& predicates() const { return preds_; }
  const std::set<std::string>& time_consts() const { return times_; }
  const std::set<std::string>& rigid_atoms() const { return rigid_; }

  // Line-oriented text: "prop: p q", "nom: a", "mod: box D", "pred: p/1 lt/2",
  // "time: t0 t1", "rigid: lt". '#' starts a comment.
  static Signature parse(const std::string& text);
  static Signature load_file(const std::string& path);

  // Serializes back to the line format above.
  std::string to_text() const;

 private:
  void check_fresh(const std::string& id) const;

  std::set<std::string> props_, noms_, mods_, times_, rigid_;
  std::map<std::string, int> preds_;
};

}  // namespace hylo
