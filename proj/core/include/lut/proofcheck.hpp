#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lut/formula.hpp"

namespace lut {

/// Axiom schemas of the Hilbert system:
///
///   PL  all instances of propositional tautologies
///   K   K_i(f -> g) -> (K_i f -> K_i g)
///   KA  [c](f -> g) -> ([c]f -> [c]g)
///   T   K_i f -> f
///   AP  [a]p <-> (a -> p)                 p an atom (or top)
///   AN  [a]~f <-> (a -> ~[a]f)
///   AC  [a](f & g) <-> ([a]f & [a]g)
///   AK  [a]K_i f <-> (a -> K_i [a]f)
///   AA  [a][b]f <-> [a & [a]b]f
///   AU  U_i f -> f & [a]~K_i f            a restricted to EL
enum class AxiomName { PL, K, KA, T, AP, AN, AC, AK, AA, AU };

const char* axiom_name_string(AxiomName a);
std::optional<AxiomName> axiom_name_from(std::string_view s);

/// True when f instantiates the schema (metavariables range over full
/// formulas, agents over agent names; the AU announcement must be EL).
/// PL is decided by tautology_skeleton.
bool match_axiom(const Formula& f, AxiomName name);

struct skeleton_too_large : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Replaces maximal subformulas headed by an atom, top, K, [.] or U with
/// propositional letters (structurally identical subformulas share one) and
/// decides the resulting boolean skeleton by truth table. Throws
/// skeleton_too_large beyond 20 distinct letters.
bool tautology_skeleton(const Formula& f);

/// Formula with exactly one hole, closed under implication antecedents,
/// knowledge and announcement prefixes. Used to describe where a U formula
/// sits when rejecting the infinitary rule.
class AdmissibleForm {
public:
  enum class Kind { Hole, Implies, Know, Ann };

  static AdmissibleForm hole();
  static AdmissibleForm implies(FormulaPtr antecedent, AdmissibleForm inner);
  static AdmissibleForm know(std::string agent, AdmissibleForm inner);
  static AdmissibleForm ann(FormulaPtr announced, AdmissibleForm inner);

  Kind kind() const { return kind_; }
  const FormulaPtr& param() const { return param_; }
  const std::string& agent() const { return agent_; }
  const AdmissibleForm& inner() const { return *inner_; }

private:
  AdmissibleForm() = default;
  Kind kind_ = Kind::Hole;
  FormulaPtr param_;
  std::string agent_;
  std::shared_ptr<const AdmissibleForm> inner_;
};

/// Plugs a formula into the hole.
FormulaPtr substitute(const AdmissibleForm& form, const FormulaPtr& filler);

/// Renders with '#' at the hole (display only; '#' is not part of the
/// formula grammar).
std::string render_with_hole(const AdmissibleForm& form);

/// Shallowest decomposition f = form(U_i g), if f has one.
std::optional<std::pair<AdmissibleForm, FormulaPtr>> outermost_unk_decomposition(
    const FormulaPtr& f);

struct Justification {
  enum class Kind { Axiom, MP, Gen, GenA, RU };

  static Justification axiom(AxiomName name);
  static Justification mp(int i, int j);                    // 1-based step refs
  static Justification gen(int i, std::string agent);
  static Justification gen_a(int i, FormulaPtr announced);
  static Justification ru();

  Kind kind = Kind::Axiom;
  AxiomName name = AxiomName::PL;
  int from1 = 0;
  int from2 = 0;
  std::string agent;
  FormulaPtr announced;
};

struct ProofStep {
  FormulaPtr formula;
  Justification by;
};

struct Proof {
  std::vector<ProofStep> steps;
};

struct proof_format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Proof document form:
///
///   { "steps": [ { "formula": "K_a p -> p", "by": "T" },
///                { "formula": "...", "by": {"mp": [1, 2]} },
///                { "formula": "...", "by": {"gen": [1, "a"]} },
///                { "formula": "...", "by": {"gena": [1, "p & q"]} } ] }
///
/// Step references are 1-based. Throws proof_format_error on malformed
/// documents.
Proof load_proof(std::string_view json_text);
Proof load_proof_file(const std::string& path);

enum class StepStatus {
  Ok,
  AxiomMismatch,
  BadReference,
  RuleShapeMismatch,
  InfinitaryRuleUnsupported,
};

const char* step_status_string(StepStatus s);

struct StepDiagnostic {
  int index = 0;  // 1-based
  StepStatus status = StepStatus::Ok;
  std::string detail;
};

struct ProofVerdict {
  bool accepted = false;
  std::vector<StepDiagnostic> steps;
};

/// Accepts iff every step is a matched axiom instance or a correct
/// application of MP, GEN or GENA to earlier steps. Steps justified by the
/// infinitary rule RU are always rejected with an explanation of the shape
/// they would need and why a finite step list cannot supply the premises.
ProofVerdict check_proof(const Proof& proof);

}  // namespace lut
