#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "msl/signature.hpp"

namespace msl {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable first-order term: a variable or an application. Shared freely;
// never mutated after construction.
struct Term {
  bool isVar;
  int sym; // variable id when isVar, function id otherwise
  std::vector<TermPtr> args;
};

TermPtr mkVar(int v);
TermPtr mkFun(int f, std::vector<TermPtr> args = {});

bool equal(const TermPtr& a, const TermPtr& b);
// depth(x) = depth(a) = 0, depth(f(t..)) = 1 + max depth(t).
int depth(const TermPtr& t);
int symbolCount(const TermPtr& t);
bool isGround(const TermPtr& t);
bool occurs(int var, const TermPtr& t);
void varsInto(const TermPtr& t, std::set<int>& out);
std::set<int> vars(const TermPtr& t);
void varOccurrences(const TermPtr& t, std::vector<int>& out);

// complex = not a variable (constants are complex).
bool isComplex(const TermPtr& t);
// shallow = depth at most one.
bool isShallow(const TermPtr& t);
// linear = no duplicate variable occurrences.
bool isLinear(const TermPtr& t);
// straight = variable, constant, or f(s1..sn) whose arguments are pairwise
// distinct variables except for at most one straight argument.
bool isStraight(const TermPtr& t);

// Positions are sequences of 1-based argument indices; the empty position
// addresses the term itself.
using Pos = std::vector<int>;
TermPtr subtermAt(const TermPtr& t, const Pos& p, size_t from = 0);
TermPtr replaceAt(const TermPtr& t, const Pos& p, const TermPtr& s, size_t from = 0);
std::vector<Pos> positions(const TermPtr& t);

// Total structural order used for canonical forms (vars < apps; then by id /
// argument list). Unrelated to the KBO.
int structuralCompare(const TermPtr& a, const TermPtr& b);

std::string show(const TermPtr& t, const Signature& sig);

} // namespace msl
