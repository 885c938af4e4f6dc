// Command-line front-end: consistency/entailment checking, model evaluation,
// measure queries, Moebius conversion, and product-space expansion.
//
// Exit codes: 0 = positive answer (consistent / entailed / satisfied / ok),
// 1 = negative answer, 2 = any error.

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "edlogic/decision.hpp"
#include "edlogic/json_io.hpp"

using namespace edlogic;
using nlohmann::json;

namespace {

struct GlobalOptions {
  std::string format = "text";
  int atom_budget = 3;
  long model_cap = 10000;
  int dnf_cap = 4096;
  long seed = 0;  // reserved for randomized harness commands

  DecisionConfig decision_config() const {
    DecisionConfig cfg;
    cfg.atom_budget = atom_budget;
    cfg.model_point_cap = model_cap;
    cfg.dnf_literal_cap = dnf_cap;
    return cfg;
  }
  bool json_output() const { return format == "json"; }
};

void emit(const json& j, const std::optional<std::string>& out_path) {
  if (out_path) {
    write_text_file(*out_path, j.dump(2) + "\n");
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

// Formula files: one formula per line, '#' starts a comment.
std::vector<Formula> parse_formula_file(const std::string& path) {
  std::vector<Formula> formulas;
  std::istringstream lines(read_text_file(path));
  std::string line;
  while (std::getline(lines, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    formulas.push_back(parse_formula(line));
  }
  return formulas;
}

void print_witness_text(const Witness& w, std::ostream& out) {
  int n = w.basis.atom_count();
  out << "conjunct " << w.conjunct_index + 1 << ":";
  for (const auto& lit : w.conjunct) out << " [" << print_basic(lit) << "]";
  out << "\n";
  if (!w.basis.props.empty()) {
    out << "props:";
    for (const auto& p : w.basis.props) out << " " << p;
    out << "\n";
  }
  for (std::size_t i = 0; i < w.e.size(); ++i)
    out << "e " << atom_set_str(static_cast<AtomSet>(i), n) << " = " << rat_str(w.e[i])
        << "\n";
  for (std::size_t i = 0; i < w.mass.size(); ++i)
    out << "mass " << atom_set_str(static_cast<AtomSet>(i), n) << " = " << rat_str(w.mass[i])
        << "\n";
}

int report_sat_result(const SatResult& result, const GlobalOptions& global,
                      const std::optional<std::string>& out,
                      const std::optional<std::string>& emit_model, const char* positive,
                      const char* negative, bool positive_is_consistent) {
  bool positive_answer = result.consistent == positive_is_consistent;
  std::optional<std::string> model_path;
  if (result.consistent && emit_model) {
    if (!result.witness->model)
      throw ModelBudgetExceeded("witness model was not constructed (over the point cap)");
    emit(model_to_json(result.witness->model->materialize()), emit_model);
    model_path = emit_model;
  }
  if (global.json_output()) {
    json j;
    if (result.consistent) {
      j = witness_to_json(*result.witness, false);
      if (model_path) j["model_path"] = *model_path;
    } else {
      j["verdict"] = "inconsistent";
    }
    j["answer"] = positive_answer ? positive : negative;
    emit(j, out);
  } else {
    std::ostringstream text;
    text << (positive_answer ? positive : negative) << "\n";
    if (result.consistent) {
      print_witness_text(*result.witness, text);
      if (model_path) text << "model: " << *model_path << "\n";
    }
    if (out)
      write_text_file(*out, text.str());
    else
      std::cout << text.str();
  }
  return positive_answer ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"expected-distance measures and the ED constraint logic"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--atom-budget", global.atom_budget, "max primitive propositions per query")
      ->capture_default_str();
  app.add_option("--model-cap", global.model_cap, "max witness-model points")
      ->capture_default_str();
  app.add_option("--dnf-cap", global.dnf_cap, "max DNF literals")->capture_default_str();
  app.add_option("--seed", global.seed, "seed for randomized harness commands (reserved)");

  auto* check = app.add_subcommand("check", "decide consistency of a formula");
  std::string check_formula;
  std::string check_file;
  std::optional<std::string> check_out, check_model;
  check->add_option("formula", check_formula, "formula text");
  check->add_option("--file", check_file, "formula file (lines are conjoined)");
  check->add_option("--out", check_out, "write the report here instead of stdout");
  check->add_option("--emit-model", check_model, "write the witness model to this file");

  auto* entail = app.add_subcommand("entail", "decide entailment of a goal");
  std::string entail_goal;
  std::string entail_premises;
  std::optional<std::string> entail_out, entail_model;
  entail->add_option("goal", entail_goal, "goal formula")->required();
  entail->add_option("--premises", entail_premises, "premise file (one formula per line)");
  entail->add_option("--out", entail_out, "write the report here instead of stdout");
  entail->add_option("--emit-model", entail_model, "write the countermodel to this file");

  auto* eval = app.add_subcommand("eval", "evaluate a formula in a model");
  std::string eval_space, eval_formula;
  std::string eval_valuation;
  eval->add_option("space", eval_space, "space file")->required();
  eval->add_option("formula", eval_formula, "formula text")->required();
  eval->add_option("--valuation", eval_valuation,
                   "valuation file (defaults to the space file's own valuation)");

  auto* measures = app.add_subcommand("measures", "expected distance and its duals");
  std::string measures_space;
  std::vector<std::string> measures_points;
  measures->add_option("space", measures_space, "space file")->required();
  measures->add_option("points", measures_points, "subset of points (may be empty)");

  auto* mobius = app.add_subcommand("mobius", "convert between doubt tables and masses");
  std::string mobius_file, mobius_direction;
  std::optional<std::string> mobius_out;
  mobius->add_option("file", mobius_file, "input table file")->required();
  mobius->add_option("--direction", mobius_direction, "to-mass or from-mass")
      ->required()
      ->check(CLI::IsMember({"to-mass", "from-mass"}));
  mobius->add_option("--out", mobius_out, "output file (stdout otherwise)");

  auto* product = app.add_subcommand("product", "expand a product space");
  std::vector<std::string> product_spaces;
  std::string product_joint;
  std::optional<std::string> product_out;
  long product_cap = kDefaultProductTupleCap;
  product->add_option("spaces", product_spaces, "component space files")->required();
  product->add_option("--joint", product_joint, "joint table file ({\"a|b\": ...})");
  product->add_option("--out", product_out, "output space file (stdout otherwise)");
  product->add_option("--tuple-cap", product_cap, "max product tuples")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*check) {
      Formula f = nullptr;
      if (!check_file.empty()) {
        for (const auto& part : parse_formula_file(check_file))
          f = f ? f_and(f, part) : part;
        if (!f) throw FormatError("no formulas in '" + check_file + "'");
      }
      if (!check_formula.empty()) {
        Formula inline_f = parse_formula(check_formula);
        f = f ? f_and(f, inline_f) : inline_f;
      }
      if (!f) throw FormatError("give a formula or --file");
      SatResult result = check_consistency(f, global.decision_config());
      return report_sat_result(result, global, check_out, check_model, "CONSISTENT",
                               "INCONSISTENT", true);
    }

    if (*entail) {
      std::vector<Formula> premises;
      if (!entail_premises.empty()) premises = parse_formula_file(entail_premises);
      SatResult query =
          entailment_query(premises, parse_formula(entail_goal), global.decision_config());
      // a consistent query carries the countermodel, so the positive answer
      // is the inconsistent verdict
      return report_sat_result(query, global, entail_out, entail_model, "ENTAILED",
                               "NOT ENTAILED", false);
    }

    if (*eval) {
      json space_json = exact_parse_json_file(eval_space);
      json val_json =
          eval_valuation.empty() ? space_json : exact_parse_json_file(eval_valuation);
      Model m = model_from_json(space_json, val_json);
      Formula f = parse_formula(eval_formula);
      bool holds = satisfies(m, f);

      // each distinct ED argument with its exact value
      std::vector<std::pair<std::string, Rat>> terms;
      auto record = [&](const Prop& arg) {
        std::string key = print_prop(arg);
        for (const auto& [seen, value] : terms)
          if (seen == key) return;
        terms.emplace_back(key, ed_of_prop(m, arg));
      };
      std::function<void(const Formula&)> walk = [&](const Formula& node) {
        if (node->kind == FormulaNode::Kind::Basic) {
          for (const auto& [coeff, arg] : node->basic.term.summands) record(arg);
        } else {
          if (node->lhs) walk(node->lhs);
          if (node->rhs) walk(node->rhs);
        }
      };
      walk(f);

      if (global.json_output()) {
        json j;
        j["satisfied"] = holds;
        json t = json::object();
        for (const auto& [key, value] : terms) t[key] = rat_to_json(value);
        j["terms"] = std::move(t);
        emit(j, std::nullopt);
      } else {
        std::cout << (holds ? "SATISFIED" : "NOT SATISFIED") << "\n";
        for (const auto& [key, value] : terms)
          std::cout << "ED(" << key << ") = " << rat_str(value) << "\n";
      }
      return holds ? 0 : 1;
    }

    if (*measures) {
      MetricProbSpace space = space_from_json(exact_parse_json_file(measures_space));
      MeasureQuad q = dual_measures(space, measures_points);
      if (global.json_output()) {
        json j;
        j["ed"] = rat_to_json(q.ed);
        j["es"] = rat_to_json(q.es);
        j["ea"] = rat_to_json(q.ea);
        j["er"] = rat_to_json(q.er);
        emit(j, std::nullopt);
      } else {
        std::cout << "ed = " << rat_str(q.ed) << "\n";
        std::cout << "es = " << rat_str(q.es) << "\n";
        std::cout << "ea = " << rat_str(q.ea) << "\n";
        std::cout << "er = " << rat_str(q.er) << "\n";
      }
      return 0;
    }

    if (*mobius) {
      json input = exact_parse_json_file(mobius_file);
      if (mobius_direction == "to-mass") {
        MassFunction m = mass_from_doubt(set_function_from_json(input));
        emit(mass_function_to_json(m), mobius_out);
      } else {
        SetFunction doubt = doubt_from_mass(mass_function_from_json(input));
        emit(set_function_to_json(doubt), mobius_out);
      }
      return 0;
    }

    if (*product) {
      json assembled;
      assembled["components"] = json::array();
      for (const auto& path : product_spaces)
        assembled["components"].push_back(exact_parse_json_file(path));
      if (!product_joint.empty()) assembled["joint"] = exact_parse_json_file(product_joint);
      ProductSpace ps = product_from_json(assembled, product_cap);
      emit(space_to_json(ps.expand()), product_out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
