#pragma once

#include "msl/clause.hpp"

namespace msl {

struct CondenseOutcome {
  ConstrainedClause cc;
  bool changed = false;
  // matcher from the pre-condensation clause onto the result; identity on the
  // kept literals, so ground instances of the result are exactly the matched
  // instances of the input
  Subst matcher;
};

// Condensation-minimal form: repeatedly searches for a proper subclause C'
// and a substitution sigma with pi*sigma a subset of pi, every literal of C
// mapped by sigma onto C', and sigma the identity on C'. Input returned
// unchanged when no condensation exists.
CondenseOutcome condense(const ConstrainedClause& cc, Signature& sig);

// Variants: a variable renaming maps one clause onto the other, literals as
// multisets and constraints as sets of atomic constraints.
bool variant(const ConstrainedClause& a, const ConstrainedClause& b, const Signature& sig);

// Theta-subsumption modulo duplicate literal elimination with constraint
// entailment: some sigma maps every literal of `general` into `specific` and
// every conjunct of normalize(pi_general * sigma) is implied by a conjunct of
// pi_specific on the same variable.
bool subsumes(const ConstrainedClause& general, const ConstrainedClause& specific,
              Signature& sig);

// Sound under-approximation of the paper's redundancy notion: a variant of
// cc is present, or some clause subsumes cc.
template <typename Range>
bool redundant(const ConstrainedClause& cc, const Range& db, Signature& sig) {
  for (const auto& d : db) {
    if (variant(d, cc, sig)) return true;
    if (subsumes(d, cc, sig)) return true;
  }
  return false;
}

} // namespace msl
