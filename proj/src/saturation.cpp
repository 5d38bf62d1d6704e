#include "msl/saturation.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "msl/unify.hpp"

namespace msl {

ConstrainedClause makeClause(ProverContext& ctx, Clause cl, Constraint cons,
                             Provenance prov) {
  ConstrainedClause cc;
  cc.cl = std::move(cl);
  cc.cons = std::move(cons);
  cc.id = ctx.freshId();
  cc.prov = std::move(prov);
  return cc;
}

namespace {

// Applies sigma, normalizes the constraint, condenses, and finalizes the
// conclusion record; empty optional when the constraint is unsolvable.
std::optional<ConstrainedClause> finishConclusion(Clause concl, Constraint rawCons,
                                                  Provenance prov, ProverContext& ctx) {
  Constraint cons = normalize(rawCons, ctx.sig);
  if (cons.isBottom() || !isSolvable(cons, ctx.groundSig())) return std::nullopt;
  ConstrainedClause cc;
  cc.cl = std::move(concl);
  cc.cons = std::move(cons);
  cc.prov = std::move(prov);
  CondenseOutcome co = condense(cc, ctx.sig);
  if (co.changed) {
    co.cc.prov.condensed = true;
    co.cc.prov.condenser = co.matcher;
    co.cc.prov.preCondense = cc.cl;
    cc = std::move(co.cc);
  }
  cc.id = ctx.freshId();
  return cc;
}

} // namespace

std::vector<ConstrainedClause> resolvents(const ConstrainedClause& left,
                                          const ConstrainedClause& rightIn,
                                          ProverContext& ctx) {
  std::vector<ConstrainedClause> out;
  if (left.cl.succ.empty() || rightIn.cl.ante.empty()) return out;
  if (!select(left.cl).empty()) return out; // condition 3, clause-level part
  ConstrainedClause right = rightIn;
  Subst rename = renameApart(right, ctx.sig);
  std::vector<int> rightSel = select(right.cl);
  KBO ord(ctx.sig);
  for (size_t i = 0; i < left.cl.succ.size(); ++i) {
    for (size_t j = 0; j < right.cl.ante.size(); ++j) {
      const Atom& A = left.cl.succ[i];
      const Atom& B = right.cl.ante[j];
      if (A.pred != B.pred) continue;
      auto sigma = unifyLists(A.args, B.args);
      if (!sigma) continue;
      bool bSelected =
          std::find(rightSel.begin(), rightSel.end(), static_cast<int>(j)) != rightSel.end();
      Clause leftInst = applyToClause(*sigma, left.cl);
      if (!ord.maximalIn(leftInst, true, i, /*strict=*/true)) continue;
      if (!bSelected) {
        if (!rightSel.empty()) continue;
        Clause rightInst = applyToClause(*sigma, right.cl);
        if (!ord.maximalIn(rightInst, false, j, /*strict=*/false)) continue;
      }
      Clause concl;
      for (const auto& a : left.cl.ante) concl.ante.push_back(applyToAtom(*sigma, a));
      for (size_t k = 0; k < right.cl.ante.size(); ++k)
        if (k != j) concl.ante.push_back(applyToAtom(*sigma, right.cl.ante[k]));
      for (size_t k = 0; k < left.cl.succ.size(); ++k)
        if (k != i) concl.succ.push_back(applyToAtom(*sigma, left.cl.succ[k]));
      for (const auto& a : right.cl.succ) concl.succ.push_back(applyToAtom(*sigma, a));
      Constraint both = applyToConstraint(*sigma, left.cons);
      both.conjoin(applyToConstraint(*sigma, right.cons));
      Provenance prov;
      prov.rule = Rule::Resolution;
      prov.left = left.id;
      prov.right = rightIn.id;
      prov.mgu = *sigma;
      prov.rightRename = rename;
      if (auto cc = finishConclusion(std::move(concl), std::move(both), prov, ctx))
        out.push_back(std::move(*cc));
    }
  }
  return out;
}

std::vector<ConstrainedClause> factors(const ConstrainedClause& ccIn, ProverContext& ctx) {
  std::vector<ConstrainedClause> out;
  if (ccIn.cl.succ.size() < 2) return out;
  if (!select(ccIn.cl).empty()) return out;
  KBO ord(ctx.sig);
  for (size_t i = 0; i < ccIn.cl.succ.size(); ++i) {
    for (size_t j = i + 1; j < ccIn.cl.succ.size(); ++j) {
      const Atom& A = ccIn.cl.succ[i];
      const Atom& B = ccIn.cl.succ[j];
      if (A.pred != B.pred) continue;
      auto sigma = unifyLists(A.args, B.args);
      if (!sigma) continue;
      Clause inst = applyToClause(*sigma, ccIn.cl);
      if (!ord.maximalIn(inst, true, i, /*strict=*/false)) continue;
      Clause concl;
      for (const auto& a : ccIn.cl.ante) concl.ante.push_back(applyToAtom(*sigma, a));
      for (size_t k = 0; k < ccIn.cl.succ.size(); ++k)
        if (k != j) concl.succ.push_back(applyToAtom(*sigma, ccIn.cl.succ[k]));
      Provenance prov;
      prov.rule = Rule::Factoring;
      prov.left = ccIn.id;
      prov.mgu = *sigma;
      if (auto cc = finishConclusion(std::move(concl), applyToConstraint(*sigma, ccIn.cons),
                                     prov, ctx))
        out.push_back(std::move(*cc));
    }
  }
  return out;
}

namespace {

long clauseWeight(const ConstrainedClause& cc) {
  long w = clauseSymbolCount(cc.cl);
  for (const auto& c : cc.cons.conjuncts()) w += symbolCount(c.lhs) + symbolCount(c.rhs);
  return w;
}

} // namespace

SaturationResult saturate(const std::vector<ConstrainedClause>& input, ProverContext& ctx,
                          const SaturationLimits& limits) {
  ctx.sig.ensureConstant(); // Herbrand universe must be non-empty
  SaturationResult res;
  res.derivation = std::make_shared<Derivation>();
  auto& archive = res.derivation->byId;
  auto start = std::chrono::steady_clock::now();
  auto timedOut = [&] {
    if (limits.maxSeconds <= 0) return false;
    std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
    return el.count() > limits.maxSeconds;
  };

  int maxDepth = 0;
  for (const auto& cc : input) maxDepth = std::max(maxDepth, cc.cons.depth());

  std::vector<ConstrainedClause> active;
  std::vector<ConstrainedClause> passive;

  auto finishEmpty = [&](const ConstrainedClause& cc) {
    res.verdict = SaturationResult::Verdict::EmptyClause;
    res.emptyClauseId = cc.id;
  };

  for (const auto& in : input) {
    ConstrainedClause cc = in;
    cc.cons = normalize(cc.cons, ctx.sig);
    if (cc.cons.isBottom() || !isSolvable(cc.cons, ctx.groundSig())) {
      ++res.stats.unsolvable;
      continue;
    }
    archive[cc.id] = cc;
    CondenseOutcome co = condense(cc, ctx.sig);
    if (co.changed) {
      Provenance prov;
      prov.rule = Rule::Condensation;
      prov.left = cc.id;
      prov.condensed = true;
      prov.condenser = co.matcher;
      prov.preCondense = cc.cl;
      ConstrainedClause condensed = co.cc;
      condensed.prov = prov;
      condensed.id = ctx.freshId();
      archive[condensed.id] = condensed;
      cc = std::move(condensed);
    }
    if (cc.cl.empty()) {
      finishEmpty(cc);
      return res;
    }
    ++res.stats.kept;
    passive.push_back(std::move(cc));
  }

  size_t pickCounter = 0;
  while (!passive.empty()) {
    ++res.stats.loops;
    if (archive.size() > limits.maxClauses || timedOut()) {
      res.verdict = SaturationResult::Verdict::ResourceOut;
      return res;
    }
    // age/weight 1:4 given-clause choice
    size_t best = 0;
    if (pickCounter % 5 == 4) {
      for (size_t k = 1; k < passive.size(); ++k)
        if (passive[k].id < passive[best].id) best = k;
    } else {
      for (size_t k = 1; k < passive.size(); ++k) {
        long wa = clauseWeight(passive[k]), wb = clauseWeight(passive[best]);
        if (wa < wb || (wa == wb && passive[k].id < passive[best].id)) best = k;
      }
    }
    ++pickCounter;
    ConstrainedClause given = std::move(passive[best]);
    passive.erase(passive.begin() + static_cast<long>(best));
    if (redundant(given, active, ctx.sig)) {
      ++res.stats.redundant;
      continue;
    }
    active.push_back(given);

    std::vector<ConstrainedClause> fresh = factors(given, ctx);
    for (const auto& other : active) {
      auto r1 = resolvents(given, other, ctx);
      fresh.insert(fresh.end(), r1.begin(), r1.end());
      if (other.id != given.id) {
        auto r2 = resolvents(other, given, ctx);
        fresh.insert(fresh.end(), r2.begin(), r2.end());
      }
    }
    for (auto& cc : fresh) {
      ++res.stats.generated;
      if (cc.cons.depth() > maxDepth)
        throw std::logic_error("derived constraint deeper than any input constraint");
      archive[cc.id] = cc;
      if (cc.cl.empty()) {
        finishEmpty(cc);
        return res;
      }
      if (redundant(cc, active, ctx.sig) || redundant(cc, passive, ctx.sig)) {
        ++res.stats.redundant;
        continue;
      }
      ++res.stats.kept;
      passive.push_back(std::move(cc));
    }
  }
  res.verdict = SaturationResult::Verdict::Saturated;
  res.saturated = std::move(active);
  return res;
}

DecideResult decide(const std::vector<ConstrainedClause>& input, ProverContext& ctx,
                    const SaturationLimits& limits) {
  for (const auto& cc : input) {
    ClauseClassReport r = classify(cc, ctx.sig);
    if (!r.isMSL)
      throw std::invalid_argument("clause " + std::to_string(cc.id) + " is not MSL(SDC): " +
                                  show(cc, ctx.sig));
  }
  DecideResult out;
  out.saturation = saturate(input, ctx, limits);
  switch (out.saturation.verdict) {
    case SaturationResult::Verdict::EmptyClause:
      out.verdict = DecideResult::Verdict::Unsat;
      break;
    case SaturationResult::Verdict::Saturated:
      out.verdict = DecideResult::Verdict::Sat;
      out.model.clauses = out.saturation.saturated;
      break;
    case SaturationResult::Verdict::ResourceOut:
      out.verdict = DecideResult::Verdict::ResourceOut;
      break;
  }
  return out;
}

namespace {

struct GroundInstance {
  Clause cl;
  const ConstrainedClause* parent;
};

bool atomInSet(const std::vector<Atom>& set, const Atom& a) {
  for (const auto& x : set)
    if (equalAtoms(x, a)) return true;
  return false;
}

} // namespace

bool groundModelSatisfies(const std::vector<Atom>& model, const Clause& groundClause) {
  for (const auto& a : groundClause.succ)
    if (atomInSet(model, a)) return true;
  for (const auto& a : groundClause.ante)
    if (!atomInSet(model, a)) return true;
  return false;
}

std::vector<Atom> modelEval(const PartialModel& m, const Signature& sig, int d, size_t cap,
                            int universeFuncLimit) {
  std::vector<TermPtr> universe =
      groundTerms(universeFuncLimit < 0 ? sig : sig.truncatedFuncs(universeFuncLimit), d, cap);
  std::vector<GroundInstance> instances;
  for (const auto& cc : m.clauses) {
    std::set<int> vs = clauseVars(cc.cl);
    std::vector<int> order(vs.begin(), vs.end());
    double space = 1;
    for (size_t i = 0; i < order.size(); ++i) space *= static_cast<double>(universe.size());
    if (space > static_cast<double>(cap))
      throw OracleCapExceeded("model evaluation instance space exceeds cap");
    std::vector<size_t> idx(order.size(), 0);
    for (;;) {
      Subst delta;
      for (size_t i = 0; i < order.size(); ++i) delta.bind(order[i], universe[idx[i]]);
      bool ok = true;
      for (const auto& c : cc.cons.conjuncts()) {
        TermPtr l = delta(c.lhs);
        if (isGround(l) && isInstance(l, c.rhs)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        Clause inst = applyToClause(delta, cc.cl);
        bool shallowEnough = true;
        for (const auto& a : inst.ante)
          for (const auto& t : a.args)
            if (depth(t) > d) shallowEnough = false;
        for (const auto& a : inst.succ)
          for (const auto& t : a.args)
            if (depth(t) > d) shallowEnough = false;
        if (shallowEnough) instances.push_back({std::move(inst), &cc});
      }
      if (order.empty()) break;
      int pos = static_cast<int>(order.size()) - 1;
      while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == universe.size()) {
        idx[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  KBO ord(sig);
  std::stable_sort(instances.begin(), instances.end(),
                   [&](const GroundInstance& a, const GroundInstance& b) {
                     Cmp c = ord.cmpClause(a.cl, b.cl);
                     if (c == Cmp::Less) return true;
                     if (c == Cmp::Greater) return false;
                     return a.parent->id < b.parent->id;
                   });
  std::vector<Atom> interp;
  for (const auto& inst : instances) {
    if (!select(inst.parent->cl).empty()) continue;
    // clause false in the interpretation so far
    bool anteTrue = true;
    for (const auto& a : inst.cl.ante)
      if (!atomInSet(interp, a)) anteTrue = false;
    if (!anteTrue) continue;
    bool succTrue = false;
    for (const auto& a : inst.cl.succ)
      if (atomInSet(interp, a)) succTrue = true;
    if (succTrue) continue;
    // strictly maximal positive literal
    KBO o(sig);
    for (size_t i = 0; i < inst.cl.succ.size(); ++i) {
      if (o.maximalIn(inst.cl, true, i, /*strict=*/true)) {
        if (!atomInSet(interp, inst.cl.succ[i])) interp.push_back(inst.cl.succ[i]);
        break;
      }
    }
  }
  std::sort(interp.begin(), interp.end(),
            [](const Atom& a, const Atom& b) { return atomCompareStructural(a, b) < 0; });
  return interp;
}

} // namespace msl
