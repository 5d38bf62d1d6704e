#pragma once

#include "msl/clause.hpp"

namespace msl {

// The superposition selection function over monadic clause bodies
// S1(t1),...,Sn(tn) -> P1(s1),...,Pm(sm): Si(ti) is selected iff
//  (1) ti is not a variable, or
//  (2) t1..tn are all variables and ti does not occur in the succedent, or
//  (3) all t1..tn occur in the succedent and some succedent argument is
//      exactly ti.
// Returns antecedent indices.
std::vector<int> select(const Clause& c);

} // namespace msl
