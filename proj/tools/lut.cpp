// Command line front end for the toolkit: formula evaluation on models,
// bounded validity search, bisimulation partitions, announcement
// elimination, complexity measures, proof checking and the property
// catalog. Exit codes encode verdicts so shell harnesses need no output
// parsing: 0 true/valid/accepted, 1 false/countermodel/rejected, 2 input
// error, 64 usage error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lut/bisim.hpp"
#include "lut/formula.hpp"
#include "lut/kripke.hpp"
#include "lut/proofcheck.hpp"
#include "lut/rewrite.hpp"
#include "lut/semantics.hpp"
#include "lut/suite.hpp"

namespace {

using nlohmann::json;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;
constexpr int kExitUsage = 64;

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> out;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

lut::FrameClass frame_from(const std::string& name) {
  if (name == "reflexive") return lut::FrameClass::Reflexive;
  if (name == "transitive") return lut::FrameClass::Transitive;
  if (name == "euclidean") return lut::FrameClass::Euclidean;
  if (name == "both") return lut::FrameClass::Both;
  throw lut::model_error("unknown frame class '" + name + "'");
}

json model_to_json(const lut::Model& m) { return json::parse(lut::save_model(m)); }

std::vector<std::string> state_names(const lut::Model& m, const lut::StateSet& set) {
  std::vector<std::string> out;
  for (int s : set.members()) out.push_back(m.state_name(s));
  return out;
}

struct CheckArgs {
  std::string model_path;
  std::string state;
  std::string formula;
  std::string format = "text";
};

int run_check(const CheckArgs& args) {
  const lut::Model m = lut::load_model_file(args.model_path);
  const lut::FormulaPtr f = lut::parse_formula(args.formula);
  lut::Evaluator ev(m);

  if (f->conn() == lut::Conn::Unk) {
    const lut::Verdict v = ev.eval_with_witness(args.state, f);
    if (args.format == "json") {
      json out;
      out["value"] = v.value;
      if (v.witness) {
        out["witness"] = {{"states", state_names(m, v.witness->states)},
                          {"formula", lut::render(v.witness->formula)}};
      } else {
        out["witness"] = nullptr;
      }
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << (v.value ? "true" : "false") << "\n";
      if (v.witness) {
        std::cout << "witness states:";
        for (const auto& name : state_names(m, v.witness->states)) std::cout << " " << name;
        std::cout << "\nwitness formula: " << lut::render(v.witness->formula) << "\n";
      }
    }
    return v.value ? kExitTrue : kExitFalse;
  }

  const bool value = ev.eval(args.state, f);
  if (args.format == "json") {
    std::cout << json{{"value", value}}.dump(2) << "\n";
  } else {
    std::cout << (value ? "true" : "false") << "\n";
  }
  return value ? kExitTrue : kExitFalse;
}

struct ValidArgs {
  std::string formula;
  int max_states = 3;
  std::string agents;
  std::string atoms;
  std::string frame = "reflexive";
  int jobs = 1;
  std::string format = "text";
};

int run_valid(const ValidArgs& args) {
  const lut::FormulaPtr f = lut::parse_formula(args.formula);
  lut::ValidityOptions opt;
  opt.max_states = args.max_states;
  opt.agents = split_list(args.agents);
  opt.atoms = split_list(args.atoms);
  opt.frame = frame_from(args.frame);
  opt.jobs = args.jobs;
  const lut::ValidityResult r = lut::bounded_validity(f, opt);

  if (args.format == "json") {
    json out;
    out["valid"] = r.valid;
    out["models_checked"] = r.models_checked;
    if (r.countermodel) {
      out["countermodel"] = {{"model", model_to_json(r.countermodel->model)},
                             {"state", r.countermodel->state}};
    } else {
      out["countermodel"] = nullptr;
    }
    std::cout << out.dump(2) << "\n";
  } else if (r.valid) {
    std::cout << "valid up to bound (" << r.models_checked << " models checked)\n";
  } else {
    std::cout << "countermodel found at state " << r.countermodel->state << ":\n"
              << lut::save_model(r.countermodel->model) << "\n";
  }
  return r.valid ? kExitTrue : kExitFalse;
}

int run_bisim(const std::string& model_path, const std::string& format) {
  const lut::Model m = lut::load_model_file(model_path);
  const lut::Partition p = lut::compute_partition(m);

  std::vector<std::vector<std::string>> blocks;
  for (const auto& block : p.blocks) {
    auto names = state_names(m, block);
    std::sort(names.begin(), names.end());
    blocks.push_back(std::move(names));
  }
  std::sort(blocks.begin(), blocks.end());

  if (format == "json") {
    std::cout << json{{"blocks", blocks}}.dump(2) << "\n";
  } else {
    for (const auto& block : blocks) {
      for (std::size_t i = 0; i < block.size(); ++i) std::cout << (i ? " " : "") << block[i];
      std::cout << "\n";
    }
  }
  return kExitTrue;
}

int run_rewrite(const std::string& formula, const std::string& format) {
  const lut::FormulaPtr f = lut::parse_formula(formula);
  std::vector<lut::FormulaPtr> chain;
  try {
    chain = lut::reduction_chain(f);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  if (format == "json") {
    json steps = json::array();
    for (const auto& g : chain) {
      const lut::Complexity c = lut::measures(g);
      steps.push_back({{"formula", lut::render(g)}, {"udepth", c.udepth}, {"size", c.size}});
    }
    std::cout << json{{"steps", steps}}.dump(2) << "\n";
  } else {
    for (const auto& g : chain) {
      const lut::Complexity c = lut::measures(g);
      std::cout << lut::render(g) << "   udepth=" << c.udepth << " size=" << c.size << "\n";
    }
  }
  return kExitTrue;
}

int run_complexity(const std::string& formula, const std::string& format) {
  const lut::Complexity c = lut::measures(lut::parse_formula(formula));
  if (format == "json") {
    std::cout << json{{"udepth", c.udepth}, {"size", c.size}}.dump(2) << "\n";
  } else {
    std::cout << "udepth=" << c.udepth << " size=" << c.size << "\n";
  }
  return kExitTrue;
}

int run_prove(const std::string& proof_path, const std::string& format) {
  const lut::Proof proof = lut::load_proof_file(proof_path);
  const lut::ProofVerdict verdict = lut::check_proof(proof);
  if (format == "json") {
    json steps = json::array();
    for (const auto& d : verdict.steps) {
      steps.push_back({{"index", d.index},
                       {"status", lut::step_status_string(d.status)},
                       {"detail", d.detail}});
    }
    std::cout << json{{"accepted", verdict.accepted}, {"steps", steps}}.dump(2) << "\n";
  } else {
    for (const auto& d : verdict.steps) {
      std::cout << "step " << d.index << ": " << lut::step_status_string(d.status);
      if (!d.detail.empty()) std::cout << ": " << d.detail;
      std::cout << "\n";
    }
    std::cout << (verdict.accepted ? "accepted" : "rejected") << "\n";
  }
  return verdict.accepted ? kExitTrue : kExitFalse;
}

struct PropsArgs {
  int bound = 3;
  std::vector<std::string> entries;
  int jobs = 1;
  std::string format = "text";
};

int run_props(const PropsArgs& args) {
  lut::SuiteOptions opt;
  opt.bound = args.bound;
  opt.jobs = args.jobs;
  opt.entries = args.entries;
  const lut::SuiteReport report = lut::run_property_suite(opt);

  if (args.format == "json") {
    json rows = json::array();
    for (const auto& row : report.rows) {
      rows.push_back({{"id", row.id},
                      {"section", row.section},
                      {"pass", row.pass},
                      {"detail", row.detail}});
    }
    std::cout << json{{"entries", rows}}.dump(2) << "\n";
  } else {
    std::size_t id_width = 0, section_width = 0;
    for (const auto& row : report.rows) {
      id_width = std::max(id_width, row.id.size());
      section_width = std::max(section_width, row.section.size());
    }
    for (const auto& row : report.rows) {
      std::cout << row.id << std::string(id_width - row.id.size() + 2, ' ') << row.section
                << std::string(section_width - row.section.size() + 2, ' ')
                << (row.pass ? "PASS" : "FAIL") << "  " << row.detail << "\n";
    }
  }
  return report.all_pass() ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"model and proof checking toolkit for a logic of unknowable truths"};
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "evaluate a formula at a pointed model");
  check->add_option("--model", check_args.model_path, "model file (JSON)")->required();
  check->add_option("--state", check_args.state, "evaluation state")->required();
  check->add_option("--formula", check_args.formula, "formula to evaluate")->required();
  check->add_option("--format", check_args.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  ValidArgs valid_args;
  CLI::App* valid = app.add_subcommand("valid", "bounded validity search over frames");
  valid->add_option("--formula", valid_args.formula, "candidate validity")->required();
  valid->add_option("--max-states", valid_args.max_states, "state bound (default 3)");
  valid->add_option("--agents", valid_args.agents, "comma separated agents (default: from formula)");
  valid->add_option("--atoms", valid_args.atoms, "comma separated atoms (default: from formula)");
  valid->add_option("--frame-class", valid_args.frame, "reflexive|transitive|euclidean|both")
      ->check(CLI::IsMember({"reflexive", "transitive", "euclidean", "both"}));
  valid->add_option("--jobs", valid_args.jobs, "worker threads");
  valid->add_option("--format", valid_args.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string bisim_model, bisim_format = "text";
  CLI::App* bisim = app.add_subcommand("bisim", "print autobisimulation blocks");
  bisim->add_option("--model", bisim_model, "model file (JSON)")->required();
  bisim->add_option("--format", bisim_format, "text|json")->check(CLI::IsMember({"text", "json"}));

  std::string rewrite_formula, rewrite_format = "text";
  CLI::App* rewrite = app.add_subcommand("rewrite", "eliminate announcements step by step");
  rewrite->add_option("--formula", rewrite_formula, "announcement formula (no U)")->required();
  rewrite->add_option("--format", rewrite_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string complexity_formula, complexity_format = "text";
  CLI::App* complexity = app.add_subcommand("complexity", "U-depth and size of a formula");
  complexity->add_option("--formula", complexity_formula, "formula")->required();
  complexity->add_option("--format", complexity_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string prove_path, prove_format = "text";
  CLI::App* prove = app.add_subcommand("prove", "check a Hilbert-style derivation");
  prove->add_option("--proof", prove_path, "proof file (JSON)")->required();
  prove->add_option("--format", prove_format, "text|json")->check(CLI::IsMember({"text", "json"}));

  PropsArgs props_args;
  CLI::App* props = app.add_subcommand("props", "run the property catalog");
  props->add_option("--bound", props_args.bound, "state bound for searches (default 3)");
  props->add_option("--entry", props_args.entries, "run only the named entries (repeatable)");
  props->add_option("--jobs", props_args.jobs, "worker threads");
  props->add_option("--format", props_args.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*check) return run_check(check_args);
    if (*valid) return run_valid(valid_args);
    if (*bisim) return run_bisim(bisim_model, bisim_format);
    if (*rewrite) return run_rewrite(rewrite_formula, rewrite_format);
    if (*complexity) return run_complexity(complexity_formula, complexity_format);
    if (*prove) return run_prove(prove_path, prove_format);
    if (*props) return run_props(props_args);
  } catch (const lut::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
