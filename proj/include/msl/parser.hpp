#pragma once

#include <string>

#include "msl/saturation.hpp"

namespace msl {

// name(args) atoms, variables uppercase, one clause per line-terminated '.':
//   clause := [lits] "->" [lits] [ "|" atomic ("," atomic)* ] "."
//   lit    := name "(" term ("," term)* ")"
//   atomic := term "!=" term
//   term   := var | name | name "(" term ("," term)* ")"
// plus unit disequations `term = term -> .` whose sides must not unify.
// '#' starts a comment. Variables are scoped per clause.
struct Problem {
  ProverContext ctx;
  std::vector<ConstrainedClause> clauses;
  std::vector<std::pair<TermPtr, TermPtr>> disequations;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line, int col)
      : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

Problem parseProblem(const std::string& text);

// Prints a problem in the input syntax; reparsing yields an equal problem.
std::string renderProblem(const Problem& p);

// Structural equality up to per-clause variable renaming.
bool problemsEqual(const Problem& a, const Problem& b);

} // namespace msl
