#pragma once

#include <cstdint>
#include <string>

#include "msl/constraint.hpp"
#include "msl/subst.hpp"
#include "msl/term.hpp"

namespace msl {

struct Atom {
  int pred;
  std::vector<TermPtr> args;
};

bool equalAtoms(const Atom& a, const Atom& b);
int atomCompareStructural(const Atom& a, const Atom& b);
Atom applyToAtom(const Subst& s, const Atom& a);
std::set<int> atomVars(const Atom& a);
std::string show(const Atom& a, const Signature& sig);

// A clause as antecedent/succedent atom multisets: ante -> succ. The stored
// order is stable and used by the approximation ancestry.
struct Clause {
  std::vector<Atom> ante;
  std::vector<Atom> succ;

  bool empty() const { return ante.empty() && succ.empty(); }
  size_t size() const { return ante.size() + succ.size(); }
};

Clause applyToClause(const Subst& s, const Clause& c);
std::set<int> clauseVars(const Clause& c);
int clauseSymbolCount(const Clause& c);
bool equalClauses(const Clause& a, const Clause& b);
// Equal after duplicate literal elimination.
bool equalModuloDup(const Clause& a, const Clause& b);
Clause dedup(const Clause& c);
std::string show(const Clause& c, const Signature& sig);

enum class Rule { Input, Resolution, Factoring, Condensation };

struct Provenance {
  Rule rule = Rule::Input;
  long left = -1;  // premise ids
  long right = -1;
  Subst mgu;         // unifier of the inference
  Subst rightRename; // renaming applied to the right premise before unifying
  Subst condenser;   // matcher of the condensation folded into this clause
  bool condensed = false;
  Clause preCondense; // clause part before condensation when condensed
};

struct ConstrainedClause {
  Clause cl;
  Constraint cons;
  long id = -1;
  Provenance prov;
};

ConstrainedClause applyToConstrained(const Subst& s, const ConstrainedClause& cc);
std::string show(const ConstrainedClause& cc, const Signature& sig);

// Renames clause variables (including constraint left-hand variables) to
// fresh ones; returns the renaming.
Subst renameApart(ConstrainedClause& cc, Signature& sig);

struct ClauseClassReport {
  bool monadicOnly = true;
  bool positiveShallow = true;
  bool positiveLinear = true;
  bool isMSL = false;
  // violating succedent literal indices (shallow/linearity) and antecedent
  // indices of non-monadic atoms, for the approximation to pick targets
  std::vector<int> deepSucc;
  std::vector<int> nonlinearSucc;
};

ClauseClassReport classify(const ConstrainedClause& cc, const Signature& sig);

} // namespace msl
