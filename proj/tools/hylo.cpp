// Command-line front end: parse, check, eval, countermodel, audit.
//
// Exit status: 0 success/accept, 1 checked-and-negative, 2 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>

#include "hylo/audit.hpp"
#include "hylo/checker.hpp"
#include "hylo/derivation.hpp"
#include "hylo/model.hpp"
#include "hylo/parser.hpp"
#include "hylo/theory.hpp"

namespace {

using namespace hylo;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Resolves the theory for a proof: an explicit --theory wins, otherwise the
// proof's own (theory "...") reference, relative to the proof file.
Theory theory_for_proof(const std::string& proof_path,
                        const std::string& theory_flag,
                        const std::string& proof_text) {
  if (!theory_flag.empty()) return Theory::load_file(theory_flag);
  if (auto ref = peek_theory_path(proof_text)) {
    auto dir = std::filesystem::path(proof_path).parent_path();
    return Theory::load_file((dir / *ref).string());
  }
  throw InputError("no theory: pass --theory or add (theory \"...\") to the proof");
}

nlohmann::ordered_json report_to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["verdict"] = r.accepted ? "accept" : "reject";
  j["end"] = r.end_formula ? print_formula(r.end_formula) : "";
  auto premises = nlohmann::ordered_json::array();
  for (const auto& f : r.premises) premises.push_back(print_formula(f));
  j["premises"] = premises;
  auto axioms = nlohmann::ordered_json::array();
  for (const auto& f : r.axiom_formulas) axioms.push_back(print_formula(f));
  j["axioms"] = axioms;
  auto diags = nlohmann::ordered_json::array();
  for (const auto& d : r.diagnostics) {
    nlohmann::ordered_json e;
    e["path"] = d.path;
    e["rule"] = d.rule;
    e["kind"] = error_kind_name(d.kind);
    e["message"] = d.message;
    diags.push_back(e);
  }
  j["diagnostics"] = diags;
  return j;
}

void render_report(const CheckReport& r, std::ostream& out) {
  out << (r.accepted ? "ACCEPT" : "REJECT") << '\n';
  out << "end: " << (r.end_formula ? print_formula(r.end_formula) : "?") << '\n';
  out << "premises: " << print_set(r.premises) << '\n';
  if (!r.axiom_formulas.empty())
    out << "axioms: " << print_set(r.axiom_formulas) << '\n';
  for (const auto& d : r.diagnostics)
    out << "error at " << (d.path.empty() ? "<root>" : d.path) << " [" << d.rule
        << "] " << error_kind_name(d.kind) << ": " << d.message << '\n';
}

int cmd_parse(const std::string& sig_path, const std::string& formula) {
  Signature sig = Signature::load_file(sig_path);
  std::cout << print_formula(parse_formula(formula, sig)) << '\n';
  return 0;
}

int cmd_check(const std::string& proof_path, const std::string& theory_flag,
              bool json) {
  std::string text = read_file(proof_path);
  Theory th = theory_for_proof(proof_path, theory_flag, text);
  ProofFile proof = parse_proof(text, th);
  CheckReport report = check_derivation(proof.root, th);
  if (json)
    std::cout << report_to_json(report).dump(2) << '\n';
  else
    render_report(report, std::cout);
  return report.accepted ? 0 : 1;
}

int cmd_eval(const std::string& model_path, const std::string& sig_path,
             const std::string& world, const std::string& formula) {
  Signature sig = Signature::load_file(sig_path);
  auto [model, assignment] = load_model_file(model_path, sig);
  int w = model.world_index(world);
  if (w < 0) throw InputError("unknown world: " + world);
  FormulaPtr f = parse_formula(formula, sig);
  std::cout << (eval(model, assignment, w, f) ? "true" : "false") << '\n';
  return 0;
}

int cmd_countermodel(const std::string& sig_path, int max_worlds,
                     const std::string& formula) {
  if (max_worlds < 1) throw InputError("--max-worlds must be at least 1");
  Signature sig = Signature::load_file(sig_path);
  FormulaPtr f = parse_formula(formula, sig);
  if (auto cm = find_countermodel(f, sig, max_worlds)) {
    std::cout << print_model(cm->model, cm->assignment);
    std::cout << "# falsified at: " << cm->model.worlds[cm->world] << '\n';
  } else {
    std::cout << "VALID up to " << max_worlds << '\n';
  }
  return 0;
}

int cmd_audit(const std::string& proof_path, const std::string& theory_flag) {
  std::string text = read_file(proof_path);
  Theory th = theory_for_proof(proof_path, theory_flag, text);
  ProofFile proof = parse_proof(text, th);
  CheckReport report = check_derivation(proof.root, th);
  if (!report.accepted) {
    render_report(report, std::cout);
    return 1;
  }
  AuditReport audit = audit_derivation(proof.root, th, report);
  std::cout << render_audit(audit);
  return audit.violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid-logic proof checking and bounded model search"};
  app.require_subcommand(1);

  std::string sig_path, formula, proof_path, theory_flag, model_path, world;
  int max_worlds = 2;
  bool json = false;

  auto* parse = app.add_subcommand("parse", "parse a formula and print it canonically");
  parse->add_option("--sig", sig_path, "signature file")->required();
  parse->add_option("formula", formula, "formula text")->required();

  auto* check = app.add_subcommand("check", "check a proof file");
  check->add_option("proof", proof_path, "proof file")->required();
  check->add_option("--theory", theory_flag, "theory file");
  check->add_flag("--json", json, "machine-readable report");

  auto* ev = app.add_subcommand("eval", "evaluate a formula in a model");
  ev->add_option("--model", model_path, "model file")->required();
  ev->add_option("--sig", sig_path, "signature file")->required();
  ev->add_option("--world", world, "world id")->required();
  ev->add_option("formula", formula, "formula text")->required();

  auto* cm = app.add_subcommand("countermodel", "search bounded models for a falsifying context");
  cm->add_option("--sig", sig_path, "signature file")->required();
  cm->add_option("--max-worlds", max_worlds, "bound on world count")->required();
  cm->add_option("formula", formula, "formula text")->required();

  auto* audit = app.add_subcommand("audit", "classify formula occurrences of a checked proof");
  audit->add_option("proof", proof_path, "proof file")->required();
  audit->add_option("--theory", theory_flag, "theory file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (parse->parsed()) return cmd_parse(sig_path, formula);
    if (check->parsed()) return cmd_check(proof_path, theory_flag, json);
    if (ev->parsed()) return cmd_eval(model_path, sig_path, world, formula);
    if (cm->parsed()) return cmd_countermodel(sig_path, max_worlds, formula);
    if (audit->parsed()) return cmd_audit(proof_path, theory_flag);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
