#pragma once

#include "msl/refine.hpp"

namespace msl {

struct FoArConfig {
  int maxIterations = 100;
  SaturationLimits satLimits;
  int evidenceDepth = 2;       // depth of the reverse-projected model sketch
  bool collectEvidence = true;
};

struct IterationRecord {
  int iteration = 0;
  size_t approxStepCount = 0;
  size_t approxClauseCount = 0;
  SaturationStats satStats;
  bool approxSat = false;
  size_t coreSize = 0;
  bool lifted = false;
  std::string conflictText;
  std::vector<std::string> refinements;          // rendered refined clauses
  std::vector<ConstrainedClause> refinedClauses; // the clauses replacing the target
  long refinedTarget = -1;
};

struct FoArResult {
  enum class Verdict { Sat, Unsat, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::vector<IterationRecord> iterations;
  std::vector<std::pair<long, Clause>> refutation; // lifted ground core on Unsat
  std::vector<Atom> modelSketch;                   // reverse-projected evidence on Sat
  std::vector<ConstrainedClause> finalClauses;     // originals after refinements
  std::string unknownReason;
};

// The approximation-refinement loop: approximate into MSL(SDC), decide,
// report SAT directly, otherwise extract the conflicting core and lift it;
// lifting failures refine the original clause set and the loop repeats.
// Stops with Unknown at the iteration bound.
FoArResult foArSolve(std::vector<ConstrainedClause> originals, ProverContext& ctx,
                     const FoArConfig& cfg = FoArConfig{});

// One line per iteration, text and machine readable.
std::string renderTrace(const FoArResult& r, const Signature& sig);

} // namespace msl
