#pragma once

#include "msl/approximate.hpp"
#include "msl/oracle.hpp"

namespace msl {

// One instantiated clause of a conflicting core: the approximated clause it
// instantiates plus its parameterized and ground instantiations.
struct CoreEntry {
  long anchor;
  Subst param;  // anchor variables -> terms over the core parameters
  Subst ground; // anchor variables -> ground terms
};

// Instantiated leaves of a refutation: jointly propositionally unsatisfiable
// under every grounding of the parameters; grounded eagerly by the minimal
// solution of the accumulated constraint.
struct ConflictingCore {
  std::vector<CoreEntry> entries;
  Constraint paramConstraint; // constraint of the empty clause
  Subst paramGrounding;       // parameters -> ground terms
  bool complete = false;

  Clause groundClauseOf(const CoreEntry& e, const AncestorIndex& idx) const;
};

// Walks the derivation DAG of the empty clause, composing unifiers downward
// and grounding leftover parameters minimally. Leaves are the saturation
// input clauses.
ConflictingCore extractCore(const SaturationResult& unsat, const AncestorIndex& idx,
                            ProverContext& ctx);

// Propositional check of a core (testing hook): true = unsatisfiable.
bool coreGroundUnsat(const ConflictingCore& core, const AncestorIndex& idx,
                     const Signature& sig);

struct LiftConflict {
  long sourceClause = -1;      // clause the failing step transformed
  long originalClause = -1;    // root original (refinement target)
  int var1 = -1, var2 = -1;    // disagreeing variable pair of the step
  int originalVar = -1;        // ancestor of var1 in the original
  TermPtr u1, u2;              // parameterized values of the pair
  TermPtr w1, w2;              // ground witnesses (w1 != w2)
  Clause conflictGround;       // the lift-conflict instance
};

struct LiftOutcome {
  bool lifted = false;
  // ground refutation over the original clauses (original id, instance)
  std::vector<std::pair<long, Clause>> refutation;
  std::optional<LiftConflict> conflict;
};

// Reverses the recorded approximation steps over the core: monadic steps
// re-anchor, linear steps need the two occurrences to agree (or the instance
// check modulo duplicate literal elimination to succeed), shallow pairs are
// resolved on their S-literals. The first failure is reported with the
// disagreeing variable pair.
LiftOutcome lift(const ConflictingCore& core, const AncestorIndex& idx, ProverContext& ctx);

} // namespace msl
