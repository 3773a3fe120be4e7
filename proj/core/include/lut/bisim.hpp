#pragma once

#include <optional>
#include <vector>

#include "lut/formula.hpp"
#include "lut/kripke.hpp"

namespace lut {

/// Equivalence classes of the coarsest autobisimulation of a model.
///
/// Two states end up in one block exactly when they satisfy the same
/// epistemic (EL) formulas over the model's atoms and agents. This is what
/// makes the announcement quantifier of the U operator finitely checkable:
/// on a finite model the EL-definable state sets are precisely the unions
/// of these blocks, so quantifying over all EL announcements reduces to
/// quantifying over block unions.
struct Partition {
  std::vector<StateSet> blocks;  // disjoint, covering, ordered by smallest member
  std::vector<int> block_of;     // state index -> block index

  int num_blocks() const { return static_cast<int>(blocks.size()); }
};

/// Coarsest stable partition: initial split by atom-valuation profile,
/// then refinement by per-agent successor-block signatures to a fixpoint.
/// Atoms with a uniform extension cannot split anything and are skipped.
Partition compute_partition(const Model& m);

/// True when no block is split by a further refinement step (and the
/// valuation is uniform within each block).
bool is_stable(const Model& m, const Partition& p);

/// Quotient model: one state per block, named after the block's first
/// member; block B relates to C when some member of B has a successor in C;
/// an atom holds at a block when it holds at its members.
/// Throws model_error when the partition is not stable for m.
Model quotient(const Model& m, const Partition& p);

/// Characteristic EL formula of a state up to the given modal rank.
/// Rank 0 is the conjunction of atom literals at the state; rank k adds,
/// per agent, one "can reach" conjunct per successor class and a "can only
/// reach" bound. At rank >= |S| its extension in m is exactly the
/// partition block of the state. The output is not boolean-simplified.
FormulaPtr characteristic(const Model& m, int state, int rank);

/// Streams every union of blocks that contains the pivot state's block,
/// smallest first, ending with the full state set.
class ClosedSubsets {
public:
  ClosedSubsets(const Partition& p, int pivot_state);

  std::optional<StateSet> next();

private:
  StateSet base_;
  std::vector<StateSet> others_;
  std::uint64_t mask_ = 0;
  bool done_ = false;
};

/// Eager form of ClosedSubsets, in the same order.
std::vector<StateSet> closed_subsets(const Partition& p, int pivot_state);

}  // namespace lut
