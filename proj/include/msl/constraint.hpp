#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "msl/subst.hpp"
#include "msl/term.hpp"

namespace msl {

// One atomic straight dismatching constraint lhs != rhs: rhs is straight and
// variable disjoint from lhs. rhs variables are local to the conjunct; they
// are canonically renamed into a reserved variable pool so that conjunct sets
// compare syntactically.
struct AtomicConstraint {
  TermPtr lhs;
  TermPtr rhs;
};

int atomicCompare(const AtomicConstraint& a, const AtomicConstraint& b);

// Conjunction of atomic straight dismatching constraints. The empty
// conjunction is the true constraint; `bot` marks the unsolvable one.
class Constraint {
public:
  static Constraint top() { return Constraint(); }
  static Constraint bottom() {
    Constraint c;
    c.bot_ = true;
    return c;
  }

  bool isBottom() const { return bot_; }
  bool isTop() const { return !bot_ && cons_.empty(); }
  const std::vector<AtomicConstraint>& conjuncts() const { return cons_; }

  // Raw conjunction; callers normalize afterwards.
  void add(AtomicConstraint c) { cons_.push_back(std::move(c)); }
  void conjoin(const Constraint& other);

  int depth() const; // maximal rhs depth
  std::set<int> lvars() const;
  bool operator==(const Constraint& o) const;

private:
  bool bot_ = false;
  std::vector<AtomicConstraint> cons_;
};

class Signature;

// Reserved pool of rhs-local variable ids. Created on demand in `sig`; names
// begin with "R". They never occur in clauses or substitution ranges.
int constraintVar(Signature& sig, int index);
bool isConstraintVar(const Signature& sig, int v);

// Renames the rhs variables of `c` into the reserved pool, depth-first.
AtomicConstraint canonicalizeRhs(const AtomicConstraint& c, Signature& sig);

// Applies sigma to left-hand sides only. Throws if sigma's range meets the
// rhs variables of the constraint.
Constraint applyToConstraint(const Subst& sigma, const Constraint& pi);

// Fixed point of the five rewrite rules over straight dismatching
// constraints; result is bottom or a set of conjuncts x != s with variable
// lhs, no rhs an instance of another rhs on the same variable. Solution set
// preserved; depth never increases.
Constraint normalize(const Constraint& pi, Signature& sig);

// Solvability over `sig` of a normalized constraint: for each constrained
// variable the rhs terms must not jointly cover every ground term.
bool isSolvable(const Constraint& pi, const Signature& sig);

// True when every lhs is ground under delta and no lhs instance matches its
// rhs.
bool isSolution(const Subst& delta, const Constraint& pi);

struct OracleCapExceeded : std::runtime_error {
  explicit OracleCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// All ground terms over sig with depth <= d, ordered by depth then by
// precedence-lexicographic structure. Throws OracleCapExceeded past `cap`.
std::vector<TermPtr> groundTerms(const Signature& sig, int d, size_t cap = 1000000);

// Exhaustive solution enumeration over the constrained variables (testing
// oracle): exactly the solutions whose bindings have depth <= d.
std::vector<Subst> enumerateSolutions(const Constraint& pi, const Signature& sig, int d,
                                      size_t cap = 1000000);

// Smallest solution in the groundTerms order, binding every variable in
// `domain` (which must include lvar(pi)). Empty when unsolvable.
std::optional<Subst> minimalSolution(const Constraint& pi, const Signature& sig,
                                     const std::set<int>& domain);

std::string show(const Constraint& pi, const Signature& sig);

} // namespace msl
