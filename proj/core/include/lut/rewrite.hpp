#pragma once

#include <optional>
#include <vector>

#include "lut/formula.hpp"

namespace lut {

/// Rewrites the leftmost-outermost announcement redex one step, using the
/// reduction equivalences left to right:
///
///   [a]p        =>  a -> p              (also for top)
///   [a]~f       =>  a -> ~[a]f
///   [a](f & g)  =>  [a]f & [a]g
///   [a]K_i f    =>  a -> K_i [a]f
///   [a][b]f     =>  [a & [a]b]f
///
/// [a]U_i f has no reduction equivalence and is never a redex; traversal
/// continues below it. Returns nullopt when no redex matches. Every step
/// strictly decreases the (udepth, size) measure.
std::optional<FormulaPtr> reduce_once(const FormulaPtr& f);

/// Fixpoint of reduce_once. The input must contain no U operator
/// (std::invalid_argument otherwise); the result then satisfies is_el.
FormulaPtr eliminate_announcements(const FormulaPtr& f);

/// All intermediate formulas of the elimination, starting with the input
/// and ending with the announcement-free fixpoint.
std::vector<FormulaPtr> reduction_chain(const FormulaPtr& f);

}  // namespace lut
