#pragma once

#include "msl/lift.hpp"

namespace msl {

// Constrained term skeleton: the linearized version of t where every
// variable occurrence keeps its own copy of the constraint.
std::pair<TermPtr, Constraint> skeleton(const TermPtr& t, const Constraint& pi,
                                        ProverContext& ctx);

// Straight term following the path of `t` down to position p; the symbol at
// p is kept, everything off the path becomes a fresh variable.
TermPtr straightPath(const TermPtr& t, const Pos& p, ProverContext& ctx);

// One planned refinement: apply (var != t) to the current target; the next
// entry refines the instantiated child (continueOnInstance) or the
// constrained child.
struct PlannedRef {
  int var;
  TermPtr t;
  bool continueOnInstance = true;
};

// Refinement plan for a lift conflict: the generalized patterns (clash at
// equivalent positions, clashes across positions, constraint exclusion) when
// they apply, otherwise the single-ground-instance construction from the
// disagreement witnesses.
std::vector<PlannedRef> planRefinement(const LiftConflict& conflict,
                                       const ConflictingCore& core, ProverContext& ctx);

} // namespace msl
