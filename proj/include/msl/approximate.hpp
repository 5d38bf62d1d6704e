#pragma once

#include <optional>
#include <variant>

#include "msl/saturation.hpp"

namespace msl {

// One monadic projection: every P(t..) becomes T(fP(t..)).
struct MonadicStep {
  int pred;
  int projPred; // T
  int projFunc; // fP
  std::vector<std::pair<long, long>> mapped; // (source, result) for changed clauses
};

// Extraction of a complex subterm s at depth-2 position (succIdx, argPos)
// of a positive literal into fresh S(x).
struct ShallowStep {
  long src = -1;
  long left = -1;
  long right = -1;
  int freshPred = -1; // S
  int freshVar = -1;  // x
  TermPtr extracted;  // s
  int succIdx = 0;    // literal E within src.succ
  Pos pos;            // atom-argument position of s in E, length 2
  // literal index maps into the source clause
  std::vector<int> leftAnteSrc;  // left ante i+1 (S(x) sits at 0) -> src ante index
  std::vector<int> rightAnteSrc; // right ante i -> src ante index
  std::vector<int> leftSuccSrc;  // left succ i -> src succ index (0 -> succIdx)
  std::vector<int> rightSuccSrc; // right succ i -> src succ index (0 -> succIdx)
  std::vector<int> sharedVars;   // vars shared between the two results
};

// Replacement of one repeated succedent variable occurrence by a fresh one,
// duplicating the antecedent and constraint when the variable occurs there.
struct LinearStep {
  long src = -1;
  long result = -1;
  int var = -1;
  int freshVar = -1;
  int succIdx = 0; // literal with the replaced occurrence
  Pos pos;         // atom-argument position of the replaced occurrence
  size_t dupCount = 0; // duplicated antecedent prefix length in the result
};

using TransformStep = std::variant<MonadicStep, ShallowStep, LinearStep>;

struct LitPos {
  long clause;
  bool inSucc;
  int lit;
  Pos pos;
};

// Records one approximation run: every clause that existed, the steps, the
// parent-clause edges and the parent-variable edges. Literal-position
// ancestry is answered from the per-step index maps.
struct AncestorIndex {
  std::vector<TransformStep> steps;
  std::map<long, ConstrainedClause> byId;       // all clauses of the run
  std::map<long, std::pair<long, int>> parent;  // child -> (parent, step index)
  std::map<int, int> varParent;                 // fresh var -> parent var, -1 = none
  std::map<int, TermPtr> extractionTerm;        // shallow fresh var -> extracted term

  long rootOf(long clauseId) const;
  // follows parent-variable edges to the original clause set; nullopt when
  // the chain dies (shallow extraction variables)
  std::optional<int> ancestorVar(int var) const;
  std::optional<LitPos> parentLitPos(const LitPos& lp) const;
  std::optional<LitPos> ancestorLitPos(const LitPos& lp) const;
};

struct ApproxResult {
  std::vector<ConstrainedClause> clauses;
  AncestorIndex index;
};

// Rewrites every non-monadic atom using a single fresh projection predicate
// and one projection function per predicate. Satisfiability preserving.
std::vector<ConstrainedClause> monadicProject(const std::vector<ConstrainedClause>& n,
                                              ProverContext& ctx, AncestorIndex& idx);

// One shallow extraction on cc; precondition: some positive literal has a
// non-shallow argument. Returns (left, right).
std::pair<ConstrainedClause, ConstrainedClause> shallowStep(const ConstrainedClause& cc,
                                                            ProverContext& ctx,
                                                            AncestorIndex& idx);

// One linearization on cc; precondition: a variable repeats in the
// succedent.
ConstrainedClause linearStep(const ConstrainedClause& cc, ProverContext& ctx,
                             AncestorIndex& idx);

bool hasShallowTarget(const ConstrainedClause& cc);
bool hasLinearTarget(const ConstrainedClause& cc);

// The full approximation: monadic projection once, then shallow before
// linear until every clause is MSL(SDC).
ApproxResult approximate(const std::vector<ConstrainedClause>& originals, ProverContext& ctx);

// The shallow rho-resolvent of a recorded shallow step; rhoOut receives the
// renaming of the shared variables.
ConstrainedClause shallowResolvent(const ShallowStep& step, const AncestorIndex& idx,
                                   ProverContext& ctx, Subst* rhoOut = nullptr);

// Refinement transformation: (C; pi ∧ x != t) and (C; pi){x -> t}, each
// dropped when its constraint is unsolvable. vars(t) must be fresh for cc.
struct RefineOutcome {
  std::optional<ConstrainedClause> constrained;
  std::optional<ConstrainedClause> instantiated;
};
RefineOutcome refineTransform(const ConstrainedClause& cc, int var, const TermPtr& t,
                              ProverContext& ctx);

} // namespace msl
