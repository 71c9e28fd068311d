// Finite Kripke models with one accessibility relation per modality name,
// per-world valuations and predicate extensions, plus bounded enumeration
// and countermodel search.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hylo/formula.hpp"
#include "hylo/signature.hpp"

namespace hylo {

using Tuple = std::vector<std::string>;

struct Model {
  std::vector<std::string> worlds;  // non-empty; canonical ids w0..w(n-1)
  // modality -> set of (from, to) world indices
  std::map<std::string, std::set<std::pair<int, int>>> relations;
  // prop -> worlds where true
  std::map<std::string, std::set<int>> valuations;
  // (world, predicate) -> tuples in its extension there
  std::map<std::pair<int, std::string>, std::set<Tuple>> extensions;

  int world_index(const std::string& id) const;  // -1 if unknown
};

// Total map from declared nominals to world indices.
using Assignment = std::map<std::string, int>;

bool eval(const Model& m, const Assignment& g, int w, const FormulaPtr& f);
bool holds_at_all_worlds(const Model& m, const Assignment& g,
                         const FormulaPtr& f);

// Default enumeration cap; override with the HYLO_MAX_ENUM environment
// variable or an explicit argument.
constexpr std::uint64_t kDefaultEnumCap = 50'000'000;
std::uint64_t enum_cap_from_env();

// Deterministic stream of every (model, assignment) with 1..max_worlds
// canonical worlds over the signature.  Throws InputError if the space
// exceeds the cap.
class ModelEnumerator {
 public:
  ModelEnumerator(const Signature& sig, int max_worlds,
                  std::uint64_t cap = enum_cap_from_env());

  std::uint64_t total() const { return total_; }
  bool next(Model& m, Assignment& g);

 private:
  void setup(int n);
  void decode(Model& m, Assignment& g) const;

  const Signature& sig_;
  int max_worlds_;
  int n_ = 0;
  std::vector<std::uint64_t> digits_, radices_;
  bool exhausted_current_ = true;
  std::uint64_t total_ = 0;
};

struct Countermodel {
  Model model;
  Assignment assignment;
  int world;
};

// First enumerated context falsifying f, or nullopt if none within the bound.
std::optional<Countermodel> find_countermodel(
    const FormulaPtr& f, const Signature& sig, int max_worlds,
    std::uint64_t cap = enum_cap_from_env());

// Counts (model, assignment, world) contexts where every global constraint
// holds at all worlds and every premise holds at w but the conclusion fails.
std::uint64_t count_soundness_violations(
    const Signature& sig, int max_worlds, const FormulaSet& premises,
    const FormulaPtr& conclusion, const FormulaSet& global_constraints,
    std::uint64_t cap = enum_cap_from_env());

// Model file IO; the text format carries an "assign:" line for the nominals.
std::pair<Model, Assignment> parse_model(const std::string& text,
                                         const Signature& sig);
std::pair<Model, Assignment> load_model_file(const std::string& path,
                                             const Signature& sig);
std::string print_model(const Model& m, const Assignment& g);

}  // namespace hylo
