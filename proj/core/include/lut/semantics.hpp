#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lut/bisim.hpp"
#include "lut/formula.hpp"
#include "lut/kripke.hpp"

namespace lut {

/// Witness that defeats an unknowability claim: a bisimulation-closed state
/// set containing the evaluation point, plus an EL formula whose extension
/// is exactly that set. Announcing the formula makes the agent know the
/// body of the refuted U.
struct Witness {
  StateSet states;
  FormulaPtr formula;
};

struct Verdict {
  bool value = false;
  std::optional<Witness> witness;
};

/// Truth evaluation on one model.
///
/// U_a f holds at s when f holds at s and no truthful EL announcement makes
/// a know f. Over a finite model the candidate announcements collapse to
/// the unions of autobisimulation blocks that contain s (announcements
/// missing s hold vacuously), so the quantifier is checked by restricting
/// the model to each such union and testing K_a f there. Restrictions are
/// cached and each carries its own partition and memo table; results are
/// memoized per (restriction, state, formula node).
///
/// Formula trees passed in are retained for the evaluator's lifetime.
/// Evaluation itself is pure; one Evaluator must not be shared across
/// threads, but any number may read the same Model and Formula objects.
class Evaluator {
public:
  explicit Evaluator(Model m);
  Evaluator(Evaluator&&) noexcept;
  Evaluator& operator=(Evaluator&&) noexcept;
  ~Evaluator();

  const Model& model() const;

  bool eval(int state, const FormulaPtr& f);
  bool eval(std::string_view state_name, const FormulaPtr& f);

  /// Evaluates an outermost U formula; when it fails because some
  /// announcement defeats it, reports the first defeating closed subset
  /// (in ClosedSubsets order) together with a defining EL formula built
  /// from rank-|S| characteristic disjunctions. When it fails because the
  /// body is already false, no witness is attached.
  Verdict eval_with_witness(int state, const FormulaPtr& f);
  Verdict eval_with_witness(std::string_view state_name, const FormulaPtr& f);

  /// { s | eval(s, f) } over the model's states.
  StateSet extension(const FormulaPtr& f);

private:
  struct Ctx;

  bool eval_in(Ctx& ctx, int state, const Formula* f);
  bool know_all(Ctx& ctx, int agent, int state, const Formula* body);
  StateSet extension_in(Ctx& ctx, const Formula* f);
  Ctx& restriction(Ctx& ctx, const StateSet& keep);
  const Partition& partition_of(Ctx& ctx);

  std::unique_ptr<Ctx> root_;
  std::vector<FormulaPtr> retained_;
};

// One-shot conveniences (an Evaluator is cheaper when asking many queries
// against the same model).
bool eval(const Model& m, std::string_view state_name, const FormulaPtr& f);
Verdict eval_with_witness(const Model& m, std::string_view state_name, const FormulaPtr& f);
StateSet extension(const Model& m, const FormulaPtr& f);

struct ValidityOptions {
  int max_states = 3;
  std::vector<std::string> agents;  // empty: use the formula's agents
  std::vector<std::string> atoms;   // empty: use the formula's atoms
  FrameClass frame = FrameClass::Reflexive;
  std::uint64_t max_models = 50'000'000;
  int jobs = 1;
};

struct Countermodel {
  Model model;
  std::string state;
};

struct ValidityResult {
  bool valid = false;
  std::uint64_t models_checked = 0;
  std::optional<Countermodel> countermodel;
};

/// Evaluates f at every state of every model the bounds admit. Returns the
/// first falsifying pointed model in enumeration order, or valid-up-to-bound
/// with the total number of models checked. With jobs > 1 models are fanned
/// out to worker threads; the reported countermodel is still the first one
/// in enumeration order.
ValidityResult bounded_validity(const FormulaPtr& f, const ValidityOptions& options);

}  // namespace lut
