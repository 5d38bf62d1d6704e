#pragma once

#include "msl/clause.hpp"

namespace msl {

// Depth-bounded Herbrand expansion plus a propositional check. Brute-force
// reference only: UNSAT here implies UNSAT of the first-order set, SAT at a
// finite depth is inconclusive.
struct GroundProblem {
  std::vector<Atom> atoms;             // interning table
  std::vector<std::vector<int>> clauses; // DIMACS-style, 1-based atom ids, sign = polarity
  int depthBound = 0;

  int intern(const Atom& a);
  std::string showClause(size_t idx, const Signature& sig) const;
};

// All ground instances C*delta whose terms have depth <= d and whose delta
// solves the constraint. Disequation units are dropped (their bodies are
// never satisfied by syntactically distinct ground terms). Duplicate ground
// clauses and tautologies are removed.
GroundProblem expand(const std::vector<ConstrainedClause>& clauses, const Signature& sig,
                     int d, size_t cap = 1000000);

// The raw instance set of one constrained clause (used for set-equality
// checks between constrained and unconstrained presentations).
std::vector<Clause> groundInstances(const ConstrainedClause& cc, const Signature& sig,
                                    int d, size_t cap = 1000000);

struct GroundSat {
  bool satisfiable = false;
  std::vector<int> assignment; // atom id -> -1/0/1 (false/unassigned/true), index 0 unused
};

// Complete propositional decision by unit propagation and branching.
GroundSat dpll(const GroundProblem& g);

} // namespace msl
