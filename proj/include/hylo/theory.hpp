// Theories: a signature plus named ground axioms, axiom schemas, and derived
// rule schemas with formula/term metavariables.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hylo/formula.hpp"
#include "hylo/signature.hpp"

namespace hylo {

// Bindings produced by pattern matching.
struct Subst {
  std::map<std::string, FormulaPtr> formulas;  // ?phi as formula var
  std::map<std::string, std::string> preds;    // ?phi as applied var -> symbol
  std::map<std::string, std::string> terms;    // ?t -> time constant
};

// Most general substitution with sigma(pat) == f; repeated variables must
// match equal subtrees.
std::optional<Subst> match_schema(const FormulaPtr& pat, const FormulaPtr& f);

// Extends an existing binding; used to match several premises at once.
bool match_into(const FormulaPtr& pat, const FormulaPtr& f, Subst& subst);

// Applies a substitution; throws InputError on an unbound variable.
FormulaPtr apply_subst(const Subst& subst, const FormulaPtr& pat);

struct DerivedRule {
  std::vector<FormulaPtr> premises;
  FormulaPtr conclusion;
};

class Theory {
 public:
  explicit Theory(Signature sig = {}) : sig_(std::move(sig)) {}

  const Signature& signature() const { return sig_; }
  bool liberalized_term() const { return liberalized_term_; }
  void set_liberalized_term(bool on) { liberalized_term_ = on; }

  void add_axiom(const std::string& name, FormulaPtr f);
  void add_schema(const std::string& name, FormulaPtr pat);
  void add_rule(const std::string& name, DerivedRule rule);

  const FormulaPtr* axiom(const std::string& name) const;
  const FormulaPtr* schema(const std::string& name) const;
  const DerivedRule* rule(const std::string& name) const;

  const std::map<std::string, FormulaPtr>& axioms() const { return axioms_; }
  const std::map<std::string, FormulaPtr>& schemas() const { return schemas_; }
  const std::map<std::string, DerivedRule>& rules() const { return rules_; }

  // If one substitution matches all premise patterns simultaneously, returns
  // the instantiated conclusion.  nullopt on mismatch; throws on bad arity.
  std::optional<FormulaPtr> instantiate_rule(
      const std::string& name, const std::vector<FormulaPtr>& premises) const;

  // Line-oriented theory text; signature given embedded or via
  // "signature: <path>" (resolved against base_dir).
  static Theory load(const std::string& text, const std::string& base_dir = ".");
  static Theory load_file(const std::string& path);

 private:
  Signature sig_;
  std::map<std::string, FormulaPtr> axioms_;
  std::map<std::string, FormulaPtr> schemas_;
  std::map<std::string, DerivedRule> rules_;
  bool liberalized_term_ = false;
};

// Satisfaction statements are always (Term)-dischargeable; rigid predicate
// atoms additionally are when the theory runs in liberalized mode.
bool is_term_dischargeable(const FormulaPtr& f, const Theory& th);

}  // namespace hylo
