#include "msl/foar.hpp"

#include <algorithm>
#include <sstream>

namespace msl {

namespace {

std::vector<Atom> reverseProject(const std::vector<Atom>& atoms, const AncestorIndex& idx,
                                 int origPredCount) {
  std::map<std::pair<int, int>, int> proj; // (T, fP) -> P
  for (const auto& st : idx.steps)
    if (const auto* mo = std::get_if<MonadicStep>(&st))
      proj[{mo->projPred, mo->projFunc}] = mo->pred;
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    if (a.pred < origPredCount) {
      out.push_back(a);
      continue;
    }
    if (a.args.size() == 1 && !a.args[0]->isVar) {
      auto it = proj.find({a.pred, a.args[0]->sym});
      if (it != proj.end()) {
        out.push_back(Atom{it->second, a.args[0]->args});
        continue;
      }
    }
    // fresh approximation predicate without an original counterpart
  }
  std::sort(out.begin(), out.end(),
            [](const Atom& x, const Atom& y) { return atomCompareStructural(x, y) < 0; });
  return out;
}

} // namespace

FoArResult foArSolve(std::vector<ConstrainedClause> originals, ProverContext& ctx,
                     const FoArConfig& cfg) {
  FoArResult res;
  ctx.sig.ensureConstant();
  if (ctx.baseFuncCount < 0) ctx.baseFuncCount = ctx.sig.numFuncs();
  int origPredCount = ctx.sig.numPreds();
  for (int iter = 1; iter <= cfg.maxIterations; ++iter) {
    IterationRecord rec;
    rec.iteration = iter;
    ApproxResult ap = approximate(originals, ctx);
    rec.approxStepCount = ap.index.steps.size();
    rec.approxClauseCount = ap.clauses.size();

    DecideResult d = decide(ap.clauses, ctx, cfg.satLimits);
    rec.satStats = d.saturation.stats;
    if (d.verdict == DecideResult::Verdict::ResourceOut) {
      res.iterations.push_back(std::move(rec));
      res.verdict = FoArResult::Verdict::Unknown;
      res.unknownReason = "saturation resource limit";
      res.finalClauses = std::move(originals);
      return res;
    }
    if (d.verdict == DecideResult::Verdict::Sat) {
      rec.approxSat = true;
      res.iterations.push_back(std::move(rec));
      res.verdict = FoArResult::Verdict::Sat;
      if (cfg.collectEvidence) {
        try {
          res.modelSketch = reverseProject(
              modelEval(d.model, ctx.sig, cfg.evidenceDepth, 1000000, ctx.baseFuncCount),
              ap.index, origPredCount);
        } catch (const OracleCapExceeded&) {
          // evidence is optional
        }
      }
      res.finalClauses = std::move(originals);
      return res;
    }

    ConflictingCore core = extractCore(d.saturation, ap.index, ctx);
    rec.coreSize = core.entries.size();
    LiftOutcome lo = lift(core, ap.index, ctx);
    if (lo.lifted) {
      rec.lifted = true;
      res.iterations.push_back(std::move(rec));
      res.verdict = FoArResult::Verdict::Unsat;
      res.refutation = std::move(lo.refutation);
      // replay check: the lifted instances are propositionally unsatisfiable
      GroundProblem g;
      for (const auto& [id, inst] : res.refutation) {
        std::vector<int> lits;
        for (const auto& a : inst.ante) lits.push_back(-g.intern(a));
        for (const auto& a : inst.succ) lits.push_back(g.intern(a));
        g.clauses.push_back(std::move(lits));
      }
      if (dpll(g).satisfiable)
        throw std::logic_error("lifted refutation is not propositionally unsatisfiable");
      res.finalClauses = std::move(originals);
      return res;
    }

    const LiftConflict& conflict = *lo.conflict;
    {
      std::ostringstream os;
      os << show(conflict.conflictGround, ctx.sig) << " vs clause "
         << conflict.originalClause << " at " << ctx.sig.varName(conflict.originalVar)
         << ": " << show(conflict.w1, ctx.sig) << " / " << show(conflict.w2, ctx.sig);
      rec.conflictText = os.str();
    }
    std::vector<PlannedRef> plan = planRefinement(conflict, core, ctx);
    size_t slot = originals.size();
    for (size_t i = 0; i < originals.size(); ++i)
      if (originals[i].id == conflict.originalClause) slot = i;
    if (slot == originals.size())
      throw std::logic_error("refinement target is not an original clause");
    rec.refinedTarget = conflict.originalClause;

    std::vector<ConstrainedClause> pieces;
    ConstrainedClause cur = originals[slot];
    bool alive = true;
    for (const auto& pr : plan) {
      if (!clauseVars(cur.cl).count(pr.var)) break;
      RefineOutcome ro = refineTransform(cur, pr.var, pr.t, ctx);
      if (pr.continueOnInstance) {
        if (ro.constrained) pieces.push_back(*ro.constrained);
        if (ro.instantiated) {
          cur = *ro.instantiated;
        } else {
          alive = false;
          break;
        }
      } else {
        if (ro.instantiated) pieces.push_back(*ro.instantiated);
        if (ro.constrained) {
          cur = *ro.constrained;
        } else {
          alive = false;
          break;
        }
      }
    }
    if (alive) pieces.push_back(cur);
    if (pieces.size() == 1 && pieces[0].id == originals[slot].id)
      throw std::logic_error("refinement made no progress");
    for (const auto& p : pieces) rec.refinements.push_back(show(p, ctx.sig));
    rec.refinedClauses = pieces;
    originals.erase(originals.begin() + static_cast<long>(slot));
    originals.insert(originals.begin() + static_cast<long>(slot), pieces.begin(),
                     pieces.end());
    res.iterations.push_back(std::move(rec));
  }
  res.verdict = FoArResult::Verdict::Unknown;
  res.unknownReason = "iteration bound reached";
  res.finalClauses = std::move(originals);
  return res;
}

std::string renderTrace(const FoArResult& r, const Signature& sig) {
  (void)sig;
  std::ostringstream os;
  for (const auto& it : r.iterations) {
    os << "iter=" << it.iteration << " approx_steps=" << it.approxStepCount
       << " approx_clauses=" << it.approxClauseCount
       << " generated=" << it.satStats.generated << " kept=" << it.satStats.kept
       << " verdict=" << (it.approxSat ? "SAT" : "UNSAT");
    if (!it.approxSat) {
      os << " core_size=" << it.coreSize << " lifted=" << (it.lifted ? "yes" : "no");
      if (!it.lifted) {
        os << " conflict=\"" << it.conflictText << "\" refined=" << it.refinedTarget
           << " into=[";
        for (size_t i = 0; i < it.refinements.size(); ++i) {
          if (i) os << "; ";
          os << it.refinements[i];
        }
        os << "]";
      }
    }
    os << "\n";
  }
  switch (r.verdict) {
    case FoArResult::Verdict::Sat: os << "result=SATISFIABLE\n"; break;
    case FoArResult::Verdict::Unsat: os << "result=UNSATISFIABLE\n"; break;
    case FoArResult::Verdict::Unknown:
      os << "result=UNKNOWN reason=\"" << r.unknownReason << "\"\n";
      break;
  }
  return os.str();
}

} // namespace msl
