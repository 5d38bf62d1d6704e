#pragma once

#include "msl/clause.hpp"

namespace msl {

enum class Cmp { Less, Greater, Equal, Incomparable };

Cmp flip(Cmp c);

// KBO with all symbol and variable weights one; precedence from the
// signature (order of first occurrence, fresh symbols appended). Atoms are
// compared as terms rooted at their predicate. Literals compare through the
// multiset encoding {A} for A and {A,A} for ¬A; clauses by the multiset
// extension over literals. On ground inputs all comparisons are total.
class KBO {
public:
  explicit KBO(const Signature& sig) : sig_(&sig) {}

  Cmp cmpTerm(const TermPtr& a, const TermPtr& b) const;
  Cmp cmpAtom(const Atom& a, const Atom& b) const;
  // positive = false encodes the negated atom.
  Cmp cmpLit(const Atom& a, bool aPos, const Atom& b, bool bPos) const;
  Cmp cmpClause(const Clause& a, const Clause& b) const;

  // Over-approximated maximality on constrained clauses: a literal counts as
  // maximal unless some other literal is symbolically greater (or equal, for
  // strict maximality). Incomparable pairs never block, which only admits
  // extra inferences.
  bool maximalIn(const Clause& c, bool inSucc, size_t idx, bool strict) const;

private:
  int weight(const TermPtr& t) const;
  int prec(bool isPred, int sym) const;
  Cmp cmpToplevel(bool aPred, int aSym, const std::vector<TermPtr>& aArgs, bool bPred,
                  int bSym, const std::vector<TermPtr>& bArgs) const;

  const Signature* sig_;
};

} // namespace msl
