#pragma once

#include <map>
#include <memory>

#include "msl/condense.hpp"
#include "msl/ordering.hpp"
#include "msl/selection.hpp"

namespace msl {

// Shared id source for clauses of one problem.
struct ProverContext {
  Signature sig;
  long nextClauseId = 0;
  // Function symbols past this index were introduced by the approximation
  // (monadic projections). Constraint solvability, solution enumeration and
  // model grounding range over the base universe only: a solution through a
  // projection function corresponds to no instance of the original problem.
  int baseFuncCount = -1;

  long freshId() { return nextClauseId++; }
  Signature groundSig() const {
    return baseFuncCount < 0 ? sig : sig.truncatedFuncs(baseFuncCount);
  }
};

ConstrainedClause makeClause(ProverContext& ctx, Clause cl, Constraint cons,
                             Provenance prov = Provenance{});

// Ordered SDC resolution between a positive literal of `left` and a negative
// literal of `right` (renamed apart): sigma = mgu, the combined normalized
// constraint solvable, A*sigma strictly maximal with nothing selected on the
// left, and B selected on the right or nothing selected and ¬B*sigma maximal.
// Results are condensed; unsolvable conclusions are dropped.
std::vector<ConstrainedClause> resolvents(const ConstrainedClause& left,
                                          const ConstrainedClause& right,
                                          ProverContext& ctx);

// SDC factoring over two positive literals: nothing selected, A*sigma
// maximal, normalized constraint solvable.
std::vector<ConstrainedClause> factors(const ConstrainedClause& cc, ProverContext& ctx);

struct SaturationLimits {
  size_t maxClauses = 200000;
  double maxSeconds = 0; // 0 = unlimited
};

struct SaturationStats {
  size_t generated = 0;
  size_t kept = 0;
  size_t redundant = 0;
  size_t unsolvable = 0;
  size_t loops = 0;
};

// Archive of every clause created during one saturation; derivations of the
// empty clause are read back through Provenance links.
struct Derivation {
  std::map<long, ConstrainedClause> byId;
  const ConstrainedClause& at(long id) const { return byId.at(id); }
};

struct SaturationResult {
  enum class Verdict { Saturated, EmptyClause, ResourceOut };
  Verdict verdict = Verdict::ResourceOut;
  std::vector<ConstrainedClause> saturated; // active set when Saturated
  long emptyClauseId = -1;
  std::shared_ptr<Derivation> derivation;
  SaturationStats stats;
};

// Otter-style given-clause loop with age/weight ratio 1:4, weight = symbol
// count, ties by id. Forward redundancy only (variants + subsumption);
// conclusions are condensed on creation. Terminates on MSL(SDC) input by the
// finite-saturation argument; the limits are defensive.
SaturationResult saturate(const std::vector<ConstrainedClause>& input, ProverContext& ctx,
                          const SaturationLimits& limits = SaturationLimits{});

struct PartialModel {
  std::vector<ConstrainedClause> clauses; // the saturated set
};

struct DecideResult {
  enum class Verdict { Sat, Unsat, ResourceOut };
  Verdict verdict = Verdict::ResourceOut;
  SaturationResult saturation;
  PartialModel model; // on Sat
};

// The MSL(SDC) decision procedure: saturates and reports UNSAT exactly when
// the empty clause is derived. Inputs must be MSL(SDC) (throws
// std::invalid_argument otherwise); disequation units are handled upstream.
DecideResult decide(const std::vector<ConstrainedClause>& input, ProverContext& ctx,
                    const SaturationLimits& limits = SaturationLimits{});

// Ground atoms of the partial model construction restricted to instances
// whose terms have depth <= d: instances are ordered by the clause ordering
// and produce their strictly maximal positive literal when nothing is
// selected in the parent and the clause is false so far. A depth-bounded
// sanity check, not a full model. `universeFuncLimit` restricts the
// grounding universe to the base function symbols while the ordering still
// sees the full signature.
std::vector<Atom> modelEval(const PartialModel& m, const Signature& sig, int d,
                            size_t cap = 1000000, int universeFuncLimit = -1);

bool groundModelSatisfies(const std::vector<Atom>& model, const Clause& groundClause);

} // namespace msl
