#include "lut/proofcheck.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lut {

using nlohmann::json;

const char* axiom_name_string(AxiomName a) {
  switch (a) {
    case AxiomName::PL: return "PL";
    case AxiomName::K: return "K";
    case AxiomName::KA: return "KA";
    case AxiomName::T: return "T";
    case AxiomName::AP: return "AP";
    case AxiomName::AN: return "AN";
    case AxiomName::AC: return "AC";
    case AxiomName::AK: return "AK";
    case AxiomName::AA: return "AA";
    case AxiomName::AU: return "AU";
  }
  return "?";
}

std::optional<AxiomName> axiom_name_from(std::string_view s) {
  static const std::pair<std::string_view, AxiomName> table[] = {
      {"PL", AxiomName::PL}, {"K", AxiomName::K},   {"KA", AxiomName::KA}, {"T", AxiomName::T},
      {"AP", AxiomName::AP}, {"AN", AxiomName::AN}, {"AC", AxiomName::AC}, {"AK", AxiomName::AK},
      {"AA", AxiomName::AA}, {"AU", AxiomName::AU},
  };
  for (const auto& [name, value] : table)
    if (name == s) return value;
  return std::nullopt;
}

namespace {

// f -> g is stored as ~(f & ~g).
struct Implies {
  const Formula* lhs;
  const Formula* rhs;
};

std::optional<Implies> as_implies(const Formula& f) {
  if (f.conn() != Conn::Neg || f.child()->conn() != Conn::And) return std::nullopt;
  const Formula& conjunction = *f.child();
  if (conjunction.rhs()->conn() != Conn::Neg) return std::nullopt;
  return Implies{conjunction.lhs().get(), conjunction.rhs()->child().get()};
}

struct Iff {
  const Formula* lhs;
  const Formula* rhs;
};

std::optional<Iff> as_iff(const Formula& f) {
  if (f.conn() != Conn::And) return std::nullopt;
  auto fwd = as_implies(*f.lhs());
  auto bwd = as_implies(*f.rhs());
  if (!fwd || !bwd) return std::nullopt;
  if (!(*fwd->lhs == *bwd->rhs) || !(*fwd->rhs == *bwd->lhs)) return std::nullopt;
  return Iff{fwd->lhs, fwd->rhs};
}

bool match_k(const Formula& f) {
  auto outer = as_implies(f);
  if (!outer) return false;
  if (outer->lhs->conn() != Conn::Know) return false;
  auto premise = as_implies(*outer->lhs->child());
  auto conclusion = as_implies(*outer->rhs);
  if (!premise || !conclusion) return false;
  const std::string& agent = outer->lhs->agent();
  return conclusion->lhs->conn() == Conn::Know && conclusion->lhs->agent() == agent &&
         conclusion->rhs->conn() == Conn::Know && conclusion->rhs->agent() == agent &&
         *conclusion->lhs->child() == *premise->lhs && *conclusion->rhs->child() == *premise->rhs;
}

bool match_ka(const Formula& f) {
  auto outer = as_implies(f);
  if (!outer) return false;
  if (outer->lhs->conn() != Conn::Ann) return false;
  const Formula& announced = *outer->lhs->announced();
  auto premise = as_implies(*outer->lhs->body());
  auto conclusion = as_implies(*outer->rhs);
  if (!premise || !conclusion) return false;
  return conclusion->lhs->conn() == Conn::Ann && *conclusion->lhs->announced() == announced &&
         conclusion->rhs->conn() == Conn::Ann && *conclusion->rhs->announced() == announced &&
         *conclusion->lhs->body() == *premise->lhs && *conclusion->rhs->body() == *premise->rhs;
}

bool match_t(const Formula& f) {
  auto imp = as_implies(f);
  return imp && imp->lhs->conn() == Conn::Know && *imp->lhs->child() == *imp->rhs;
}

bool match_ap(const Formula& f) {
  auto eq = as_iff(f);
  if (!eq || eq->lhs->conn() != Conn::Ann) return false;
  const Formula& body = *eq->lhs->body();
  if (body.conn() != Conn::Atom && body.conn() != Conn::Top) return false;
  auto rhs = as_implies(*eq->rhs);
  return rhs && *rhs->lhs == *eq->lhs->announced() && *rhs->rhs == body;
}

bool match_an(const Formula& f) {
  auto eq = as_iff(f);
  if (!eq || eq->lhs->conn() != Conn::Ann) return false;
  const Formula& announced = *eq->lhs->announced();
  const Formula& body = *eq->lhs->body();
  if (body.conn() != Conn::Neg) return false;
  auto rhs = as_implies(*eq->rhs);
  if (!rhs || !(*rhs->lhs == announced)) return false;
  return rhs->rhs->conn() == Conn::Neg && rhs->rhs->child()->conn() == Conn::Ann &&
         *rhs->rhs->child()->announced() == announced &&
         *rhs->rhs->child()->body() == *body.child();
}

bool match_ac(const Formula& f) {
  auto eq = as_iff(f);
  if (!eq || eq->lhs->conn() != Conn::Ann) return false;
  const Formula& announced = *eq->lhs->announced();
  const Formula& body = *eq->lhs->body();
  if (body.conn() != Conn::And || eq->rhs->conn() != Conn::And) return false;
  const Formula& left = *eq->rhs->lhs();
  const Formula& right = *eq->rhs->rhs();
  return left.conn() == Conn::Ann && right.conn() == Conn::Ann &&
         *left.announced() == announced && *right.announced() == announced &&
         *left.body() == *body.lhs() && *right.body() == *body.rhs();
}

bool match_ak(const Formula& f) {
  auto eq = as_iff(f);
  if (!eq || eq->lhs->conn() != Conn::Ann) return false;
  const Formula& announced = *eq->lhs->announced();
  const Formula& body = *eq->lhs->body();
  if (body.conn() != Conn::Know) return false;
  auto rhs = as_implies(*eq->rhs);
  if (!rhs || !(*rhs->lhs == announced)) return false;
  return rhs->rhs->conn() == Conn::Know && rhs->rhs->agent() == body.agent() &&
         rhs->rhs->child()->conn() == Conn::Ann &&
         *rhs->rhs->child()->announced() == announced &&
         *rhs->rhs->child()->body() == *body.child();
}

bool match_aa(const Formula& f) {
  auto eq = as_iff(f);
  if (!eq || eq->lhs->conn() != Conn::Ann) return false;
  const Formula& first = *eq->lhs->announced();
  const Formula& body = *eq->lhs->body();
  if (body.conn() != Conn::Ann) return false;
  const Formula& second = *body.announced();
  if (eq->rhs->conn() != Conn::Ann) return false;
  const Formula& merged = *eq->rhs->announced();
  return merged.conn() == Conn::And && *merged.lhs() == first &&
         merged.rhs()->conn() == Conn::Ann && *merged.rhs()->announced() == first &&
         *merged.rhs()->body() == second && *eq->rhs->body() == *body.body();
}

bool match_au(const Formula& f) {
  auto imp = as_implies(f);
  if (!imp || imp->lhs->conn() != Conn::Unk) return false;
  const Formula& body = *imp->lhs->child();
  const std::string& agent = imp->lhs->agent();
  if (imp->rhs->conn() != Conn::And) return false;
  const Formula& truth = *imp->rhs->lhs();
  const Formula& after = *imp->rhs->rhs();
  if (!(truth == body)) return false;
  if (after.conn() != Conn::Ann || !is_el(*after.announced())) return false;
  const Formula& unknown = *after.body();
  return unknown.conn() == Conn::Neg && unknown.child()->conn() == Conn::Know &&
         unknown.child()->agent() == agent && *unknown.child()->child() == body;
}

bool is_skeleton_letter(const Formula& f) {
  switch (f.conn()) {
    case Conn::Atom:
    case Conn::Top:
    case Conn::Know:
    case Conn::Ann:
    case Conn::Unk:
      return true;
    case Conn::Neg:
    case Conn::And:
      return false;
  }
  return false;
}

// Boolean skeleton compiled once: leaves hold letter indices, inner nodes
// are negation or conjunction over earlier entries, the root is last.
struct Skeleton {
  struct Node {
    int letter = -1;  // >= 0 at leaves
    bool conjunction = false;
    int a = -1;
    int b = -1;
  };
  std::vector<Node> nodes;
  std::vector<const Formula*> letters;

  int compile(const Formula& f) {
    if (is_skeleton_letter(f)) {
      int index = -1;
      for (std::size_t i = 0; i < letters.size(); ++i)
        if (*letters[i] == f) {
          index = static_cast<int>(i);
          break;
        }
      if (index == -1) {
        index = static_cast<int>(letters.size());
        letters.push_back(&f);
      }
      nodes.push_back({index, false, -1, -1});
    } else if (f.conn() == Conn::Neg) {
      const int child = compile(*f.child());
      nodes.push_back({-1, false, child, -1});
    } else {
      const int lhs = compile(*f.lhs());
      const int rhs = compile(*f.rhs());
      nodes.push_back({-1, true, lhs, rhs});
    }
    return static_cast<int>(nodes.size()) - 1;
  }

  bool eval(std::uint32_t assignment) const {
    std::vector<bool> value(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& n = nodes[i];
      if (n.letter >= 0) value[i] = (assignment >> n.letter) & 1;
      else if (n.conjunction) value[i] = value[n.a] && value[n.b];
      else value[i] = !value[n.a];
    }
    return value.back();
  }
};

}  // namespace

bool tautology_skeleton(const Formula& f) {
  Skeleton skeleton;
  skeleton.compile(f);
  if (skeleton.letters.size() > 20)
    throw skeleton_too_large("propositional skeleton has " +
                             std::to_string(skeleton.letters.size()) +
                             " distinct letters (limit 20)");
  const std::uint32_t limit = std::uint32_t{1} << skeleton.letters.size();
  for (std::uint32_t assignment = 0; assignment < limit; ++assignment)
    if (!skeleton.eval(assignment)) return false;
  return true;
}

bool match_axiom(const Formula& f, AxiomName name) {
  switch (name) {
    case AxiomName::PL: return tautology_skeleton(f);
    case AxiomName::K: return match_k(f);
    case AxiomName::KA: return match_ka(f);
    case AxiomName::T: return match_t(f);
    case AxiomName::AP: return match_ap(f);
    case AxiomName::AN: return match_an(f);
    case AxiomName::AC: return match_ac(f);
    case AxiomName::AK: return match_ak(f);
    case AxiomName::AA: return match_aa(f);
    case AxiomName::AU: return match_au(f);
  }
  return false;
}

AdmissibleForm AdmissibleForm::hole() { return AdmissibleForm(); }

AdmissibleForm AdmissibleForm::implies(FormulaPtr antecedent, AdmissibleForm inner) {
  AdmissibleForm form;
  form.kind_ = Kind::Implies;
  form.param_ = std::move(antecedent);
  form.inner_ = std::make_shared<AdmissibleForm>(std::move(inner));
  return form;
}

AdmissibleForm AdmissibleForm::know(std::string agent, AdmissibleForm inner) {
  AdmissibleForm form;
  form.kind_ = Kind::Know;
  form.agent_ = std::move(agent);
  form.inner_ = std::make_shared<AdmissibleForm>(std::move(inner));
  return form;
}

AdmissibleForm AdmissibleForm::ann(FormulaPtr announced, AdmissibleForm inner) {
  AdmissibleForm form;
  form.kind_ = Kind::Ann;
  form.param_ = std::move(announced);
  form.inner_ = std::make_shared<AdmissibleForm>(std::move(inner));
  return form;
}

FormulaPtr substitute(const AdmissibleForm& form, const FormulaPtr& filler) {
  switch (form.kind()) {
    case AdmissibleForm::Kind::Hole: return filler;
    case AdmissibleForm::Kind::Implies: return impl(form.param(), substitute(form.inner(), filler));
    case AdmissibleForm::Kind::Know: return know(form.agent(), substitute(form.inner(), filler));
    case AdmissibleForm::Kind::Ann: return ann(form.param(), substitute(form.inner(), filler));
  }
  return filler;
}

std::string render_with_hole(const AdmissibleForm& form) {
  switch (form.kind()) {
    case AdmissibleForm::Kind::Hole: return "#";
    case AdmissibleForm::Kind::Implies:
      return render(form.param()) + " -> " + render_with_hole(form.inner());
    case AdmissibleForm::Kind::Know:
      return "K_" + form.agent() + " (" + render_with_hole(form.inner()) + ")";
    case AdmissibleForm::Kind::Ann:
      return "[" + render(form.param()) + "] (" + render_with_hole(form.inner()) + ")";
  }
  return "#";
}

std::optional<std::pair<AdmissibleForm, FormulaPtr>> outermost_unk_decomposition(
    const FormulaPtr& f) {
  if (f->conn() == Conn::Unk) return {{AdmissibleForm::hole(), f}};
  if (f->conn() == Conn::Know) {
    if (auto inner = outermost_unk_decomposition(f->child()))
      return {{AdmissibleForm::know(f->agent(), std::move(inner->first)), std::move(inner->second)}};
    return std::nullopt;
  }
  if (f->conn() == Conn::Ann) {
    if (auto inner = outermost_unk_decomposition(f->body()))
      return {{AdmissibleForm::ann(f->announced(), std::move(inner->first)),
               std::move(inner->second)}};
    return std::nullopt;
  }
  if (f->conn() == Conn::Neg && f->child()->conn() == Conn::And &&
      f->child()->rhs()->conn() == Conn::Neg) {
    // implication shape: descend into the consequent
    const FormulaPtr& antecedent = f->child()->lhs();
    const FormulaPtr& consequent = f->child()->rhs()->child();
    if (auto inner = outermost_unk_decomposition(consequent))
      return {{AdmissibleForm::implies(antecedent, std::move(inner->first)),
               std::move(inner->second)}};
  }
  return std::nullopt;
}

Justification Justification::axiom(AxiomName name) {
  Justification j;
  j.kind = Kind::Axiom;
  j.name = name;
  return j;
}

Justification Justification::mp(int i, int j) {
  Justification just;
  just.kind = Kind::MP;
  just.from1 = i;
  just.from2 = j;
  return just;
}

Justification Justification::gen(int i, std::string agent) {
  Justification j;
  j.kind = Kind::Gen;
  j.from1 = i;
  j.agent = std::move(agent);
  return j;
}

Justification Justification::gen_a(int i, FormulaPtr announced) {
  Justification j;
  j.kind = Kind::GenA;
  j.from1 = i;
  j.announced = std::move(announced);
  return j;
}

Justification Justification::ru() {
  Justification j;
  j.kind = Kind::RU;
  return j;
}

Proof load_proof(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw proof_format_error(std::string("invalid proof document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("steps") || !doc["steps"].is_array())
    throw proof_format_error("proof document must be an object with a \"steps\" array");

  Proof proof;
  int index = 0;
  for (const auto& step : doc["steps"]) {
    ++index;
    const std::string where = "step " + std::to_string(index);
    if (!step.is_object() || !step.contains("formula") || !step["formula"].is_string() ||
        !step.contains("by"))
      throw proof_format_error(where + " needs a \"formula\" string and a \"by\" justification");
    FormulaPtr formula;
    try {
      formula = parse_formula(step["formula"].get<std::string>());
    } catch (const parse_error& e) {
      throw proof_format_error(where + ": " + e.what());
    }

    const json& by = step["by"];
    Justification just;
    if (by.is_string()) {
      const std::string name = by.get<std::string>();
      if (name == "RU") {
        just = Justification::ru();
      } else if (auto axiom = axiom_name_from(name)) {
        just = Justification::axiom(*axiom);
      } else {
        throw proof_format_error(where + ": unknown justification \"" + name + "\"");
      }
    } else if (by.is_object() && by.size() == 1) {
      if (by.contains("mp")) {
        const json& args = by["mp"];
        if (!args.is_array() || args.size() != 2 || !args[0].is_number_integer() ||
            !args[1].is_number_integer())
          throw proof_format_error(where + ": \"mp\" needs two step indices");
        just = Justification::mp(args[0].get<int>(), args[1].get<int>());
      } else if (by.contains("gen")) {
        const json& args = by["gen"];
        if (!args.is_array() || args.size() != 2 || !args[0].is_number_integer() ||
            !args[1].is_string())
          throw proof_format_error(where + ": \"gen\" needs a step index and an agent");
        just = Justification::gen(args[0].get<int>(), args[1].get<std::string>());
      } else if (by.contains("gena")) {
        const json& args = by["gena"];
        if (!args.is_array() || args.size() != 2 || !args[0].is_number_integer() ||
            !args[1].is_string())
          throw proof_format_error(where + ": \"gena\" needs a step index and a formula");
        FormulaPtr announced;
        try {
          announced = parse_formula(args[1].get<std::string>());
        } catch (const parse_error& e) {
          throw proof_format_error(where + ": " + e.what());
        }
        just = Justification::gen_a(args[0].get<int>(), std::move(announced));
      } else {
        throw proof_format_error(where + ": unknown justification object");
      }
    } else {
      throw proof_format_error(where + ": \"by\" must be an axiom name or a rule object");
    }
    proof.steps.push_back({std::move(formula), std::move(just)});
  }
  return proof;
}

Proof load_proof_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw proof_format_error("cannot open proof file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_proof(buf.str());
}

const char* step_status_string(StepStatus s) {
  switch (s) {
    case StepStatus::Ok: return "ok";
    case StepStatus::AxiomMismatch: return "AxiomMismatch";
    case StepStatus::BadReference: return "BadReference";
    case StepStatus::RuleShapeMismatch: return "RuleShapeMismatch";
    case StepStatus::InfinitaryRuleUnsupported: return "InfinitaryRuleUnsupported";
  }
  return "?";
}

namespace {

StepDiagnostic check_step(const Proof& proof, int index0) {
  const ProofStep& step = proof.steps[index0];
  const int index = index0 + 1;
  StepDiagnostic diag{index, StepStatus::Ok, ""};

  auto reference = [&](int ref) -> const ProofStep* {
    if (ref < 1 || ref >= index) {
      diag.status = StepStatus::BadReference;
      diag.detail = "reference to step " + std::to_string(ref) +
                    " (must name an earlier step of this proof)";
      return nullptr;
    }
    return &proof.steps[ref - 1];
  };

  switch (step.by.kind) {
    case Justification::Kind::Axiom: {
      bool matched = false;
      try {
        matched = match_axiom(*step.formula, step.by.name);
      } catch (const skeleton_too_large& e) {
        diag.status = StepStatus::AxiomMismatch;
        diag.detail = std::string("PL check failed: ") + e.what();
        return diag;
      }
      if (!matched) {
        diag.status = StepStatus::AxiomMismatch;
        diag.detail = "formula is not an instance of axiom " +
                      std::string(axiom_name_string(step.by.name));
      }
      return diag;
    }
    case Justification::Kind::MP: {
      const ProofStep* premise = reference(step.by.from1);
      if (!premise) return diag;
      const ProofStep* conditional = reference(step.by.from2);
      if (!conditional) return diag;
      const FormulaPtr expected = impl(premise->formula, step.formula);
      if (!(*conditional->formula == *expected)) {
        diag.status = StepStatus::RuleShapeMismatch;
        diag.detail = "MP needs step " + std::to_string(step.by.from2) + " to be \"" +
                      render(expected) + "\"";
      }
      return diag;
    }
    case Justification::Kind::Gen: {
      const ProofStep* premise = reference(step.by.from1);
      if (!premise) return diag;
      const FormulaPtr expected = know(step.by.agent, premise->formula);
      if (!(*step.formula == *expected)) {
        diag.status = StepStatus::RuleShapeMismatch;
        diag.detail = "GEN from step " + std::to_string(step.by.from1) + " yields \"" +
                      render(expected) + "\"";
      }
      return diag;
    }
    case Justification::Kind::GenA: {
      const ProofStep* premise = reference(step.by.from1);
      if (!premise) return diag;
      const FormulaPtr expected = ann(step.by.announced, premise->formula);
      if (!(*step.formula == *expected)) {
        diag.status = StepStatus::RuleShapeMismatch;
        diag.detail = "GENA from step " + std::to_string(step.by.from1) + " yields \"" +
                      render(expected) + "\"";
      }
      return diag;
    }
    case Justification::Kind::RU: {
      diag.status = StepStatus::InfinitaryRuleUnsupported;
      std::string detail =
          "rule RU derives eta(U_i f) from the premises eta(f & [psi]~K_i f), one for "
          "every EL formula psi; a finite step list cannot supply them";
      if (auto decomp = outermost_unk_decomposition(step.formula)) {
        detail += " (here eta = " + render_with_hole(decomp->first) +
                  ", U formula = " + render(decomp->second) + ")";
      } else {
        detail += "; moreover this step does not even have the shape eta(U_i f)";
      }
      diag.detail = std::move(detail);
      return diag;
    }
  }
  return diag;
}

}  // namespace

ProofVerdict check_proof(const Proof& proof) {
  ProofVerdict verdict;
  verdict.accepted = true;
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    StepDiagnostic diag = check_step(proof, static_cast<int>(i));
    if (diag.status != StepStatus::Ok) verdict.accepted = false;
    verdict.steps.push_back(std::move(diag));
  }
  return verdict;
}

}  // namespace lut
