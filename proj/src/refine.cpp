#include "msl/refine.hpp"

#include <algorithm>

#include "msl/unify.hpp"

namespace msl {

std::pair<TermPtr, Constraint> skeleton(const TermPtr& t, const Constraint& pi,
                                        ProverContext& ctx) {
  TermPtr cur = t;
  Constraint cons = pi;
  for (;;) {
    std::map<int, Pos> first;
    std::optional<std::pair<int, Pos>> repeat;
    for (const Pos& p : positions(cur)) {
      TermPtr sub = subtermAt(cur, p);
      if (!sub->isVar) continue;
      auto it = first.find(sub->sym);
      if (it == first.end())
        first[sub->sym] = p;
      else if (!repeat) {
        repeat = {sub->sym, p};
        break;
      }
    }
    if (!repeat) break;
    auto [v, p] = *repeat;
    int vf = ctx.sig.freshVar(ctx.sig.varName(v));
    cur = replaceAt(cur, p, mkVar(vf));
    Subst sigma;
    sigma.bind(v, mkVar(vf));
    cons.conjoin(applyToConstraint(sigma, pi));
  }
  return {cur, normalize(cons, ctx.sig)};
}

TermPtr straightPath(const TermPtr& t, const Pos& p, ProverContext& ctx) {
  TermPtr node = p.empty() ? t : subtermAt(t, Pos(p.begin(), p.end()));
  if (node->isVar) throw std::invalid_argument("straightPath: variable at target position");
  if (p.empty()) {
    std::vector<TermPtr> args;
    for (size_t i = 0; i < node->args.size(); ++i)
      args.push_back(mkVar(ctx.sig.freshVar("W")));
    return mkFun(node->sym, std::move(args));
  }
  Pos rest(p.begin() + 1, p.end());
  if (t->isVar) throw std::invalid_argument("straightPath: path through a variable");
  std::vector<TermPtr> args;
  for (size_t i = 0; i < t->args.size(); ++i) {
    if (static_cast<int>(i + 1) == p[0])
      args.push_back(straightPath(t->args[i], rest, ctx));
    else
      args.push_back(mkVar(ctx.sig.freshVar("W")));
  }
  return mkFun(t->sym, std::move(args));
}

namespace {

// Unification of the two requirement terms with a binding trail: which
// variable was bound where (positions relative to req1/req2), and where a
// symbol clash or occurs-check failure happened.
struct TraceResult {
  bool success = false;
  Subst mgu;
  // on failure:
  bool occursFailure = false;
  Pos clashPos;               // position of the failure
  int occursVar = -1;         // variable of the occurs failure
  bool occursVarInReq1 = false;
  struct Binding {
    int var;
    bool varInReq1; // side the variable occurrence came from
    Pos pos;        // position of that occurrence
  };
  std::vector<Binding> trail;
};

bool traceUnify(const TermPtr& a, const TermPtr& b, const Pos& pos, TraceResult& res) {
  TermPtr x = res.mgu(a);
  TermPtr y = res.mgu(b);
  if (equal(x, y)) return true;
  if (x->isVar) {
    if (occurs(x->sym, y)) {
      res.occursFailure = true;
      res.clashPos = pos;
      res.occursVar = x->sym;
      res.occursVarInReq1 = true;
      return false;
    }
    res.mgu.composeBinding(x->sym, y);
    res.trail.push_back({x->sym, true, pos});
    return true;
  }
  if (y->isVar) {
    if (occurs(y->sym, x)) {
      res.occursFailure = true;
      res.clashPos = pos;
      res.occursVar = y->sym;
      res.occursVarInReq1 = false;
      return false;
    }
    res.mgu.composeBinding(y->sym, x);
    res.trail.push_back({y->sym, false, pos});
    return true;
  }
  if (x->sym != y->sym || x->args.size() != y->args.size()) {
    res.clashPos = pos;
    return false;
  }
  for (size_t i = 0; i < x->args.size(); ++i) {
    Pos sub = pos;
    sub.push_back(static_cast<int>(i + 1));
    if (!traceUnify(x->args[i], y->args[i], sub, res)) return false;
  }
  return true;
}

TraceResult runTraceUnify(const TermPtr& u1, const TermPtr& u2) {
  TraceResult res;
  res.success = traceUnify(u1, u2, Pos{}, res);
  return res;
}

std::optional<TermPtr> pathCandidate(const TermPtr& t, const Pos& p, ProverContext& ctx) {
  // valid only when function symbols sit along the whole path including p
  TermPtr cur = t;
  for (int i : p) {
    if (cur->isVar || i < 1 || static_cast<size_t>(i) > cur->args.size())
      return std::nullopt;
    cur = cur->args[static_cast<size_t>(i - 1)];
  }
  if (cur->isVar) return std::nullopt;
  return straightPath(t, p, ctx);
}

std::optional<Pos> firstDisagreement(const TermPtr& a, const TermPtr& b) {
  if (a->isVar || b->isVar) return std::nullopt;
  if (a->sym != b->sym) return Pos{};
  for (size_t i = 0; i < a->args.size(); ++i) {
    auto sub = firstDisagreement(a->args[i], b->args[i]);
    if (sub) {
      Pos p{static_cast<int>(i + 1)};
      p.insert(p.end(), sub->begin(), sub->end());
      return p;
    }
  }
  return std::nullopt;
}

// structural order blind to variable identity, for deterministic candidate
// selection independent of fresh-name allocation
int varBlindCompare(const TermPtr& a, const TermPtr& b) {
  if (a->isVar != b->isVar) return a->isVar ? -1 : 1;
  if (a->isVar) return 0;
  if (a->sym != b->sym) return a->sym < b->sym ? -1 : 1;
  for (size_t i = 0; i < a->args.size(); ++i) {
    int c = varBlindCompare(a->args[i], b->args[i]);
    if (c != 0) return c;
  }
  return 0;
}

} // namespace

std::vector<PlannedRef> planRefinement(const LiftConflict& conflict,
                                       const ConflictingCore& core, ProverContext& ctx) {
  std::vector<PlannedRef> plan;
  TermPtr req1 = conflict.u1, req2 = conflict.u2;
  TermPtr w1 = conflict.w1, w2 = conflict.w2;
  int curVar = conflict.originalVar;
  bool resolved = false;

  for (int round = 0; round < 16; ++round) {
    if (equal(w1, w2)) {
      resolved = true;
      break;
    }
    TraceResult tr = runTraceUnify(req1, req2);
    if (tr.success) {
      // unifiable requirements: the conflict must come from constraints
      std::set<int> reqVars = vars(req1);
      for (int v : vars(req2)) reqVars.insert(v);
      Constraint merged;
      for (const auto& c : core.paramConstraint.conjuncts())
        if (c.lhs->isVar && reqVars.count(c.lhs->sym))
          merged.add(AtomicConstraint{tr.mgu(c.lhs), c.rhs});
      merged = normalize(merged, ctx.sig);
      if (!merged.isBottom() && isSolvable(merged, ctx.groundSig())) break; // fall through to ground
      // constraint exclusion: enumerate the terms barred for the first side
      std::vector<TermPtr> ts;
      for (const auto& c : core.paramConstraint.conjuncts())
        if (c.lhs->isVar && vars(req1).count(c.lhs->sym)) ts.push_back(c.rhs);
      if (ts.empty())
        for (const auto& c : core.paramConstraint.conjuncts())
          if (c.lhs->isVar && vars(req2).count(c.lhs->sym)) ts.push_back(c.rhs);
      std::sort(ts.begin(), ts.end(),
                [](const TermPtr& a, const TermPtr& b) { return structuralCompare(a, b) < 0; });
      for (const auto& t : ts) {
        Subst fresh;
        for (int v : vars(t)) fresh.bind(v, mkVar(ctx.sig.freshVar("W")));
        plan.push_back(PlannedRef{curVar, fresh(t), /*continueOnInstance=*/false});
      }
      return plan;
    }

    std::vector<TermPtr> candidates;
    auto add = [&](std::optional<TermPtr> t) {
      if (t) candidates.push_back(*t);
    };
    if (tr.occursFailure) {
      // the cyclic side: straight paths to the parents of the occurrences
      const TermPtr& other = tr.occursVarInReq1 ? req2 : req1;
      for (const Pos& p : positions(other)) {
        TermPtr sub = subtermAt(other, p);
        if (sub->isVar && sub->sym == tr.occursVar && !p.empty()) {
          Pos parentPos(p.begin(), p.end() - 1);
          add(pathCandidate(other, parentPos, ctx));
        }
      }
    } else {
      add(pathCandidate(req1, tr.clashPos, ctx));
      add(pathCandidate(req2, tr.clashPos, ctx));
      // pinned variables: exclude the pinning value at its binding position
      for (const auto& b : tr.trail) {
        add(pathCandidate(req1, b.pos, ctx));
        add(pathCandidate(req2, b.pos, ctx));
      }
    }
    // fall back to the ground witnesses
    if (auto pg = firstDisagreement(w1, w2)) {
      add(pathCandidate(w1, *pg, ctx));
      add(pathCandidate(w2, *pg, ctx));
    }
    // a valid candidate covers at least one witness: the constrained branch
    // then kills that witness's occurrence. Candidates covering both keep
    // the clash alive inside the instantiated branch and are preferred
    // (the cross-position pattern); ties resolve by a name-blind order.
    struct Cand {
      TermPtr t;
      bool coversBoth;
    };
    std::vector<Cand> valid;
    for (const auto& t : candidates) {
      if (!isStraight(t)) continue;
      bool i1 = isInstance(w1, t);
      bool i2 = isInstance(w2, t);
      if (!i1 && !i2) continue;
      bool dup = false;
      for (const auto& c : valid)
        if (varBlindCompare(c.t, t) == 0) dup = true;
      if (!dup) valid.push_back({t, i1 && i2});
    }
    if (valid.empty()) break;
    std::stable_sort(valid.begin(), valid.end(), [](const Cand& a, const Cand& b) {
      if (a.coversBoth != b.coversBoth) return a.coversBoth;
      return varBlindCompare(a.t, b.t) < 0;
    });
    TermPtr t = valid.front().t;
    plan.push_back(PlannedRef{curVar, t, /*continueOnInstance=*/true});

    // continue on the instantiated child: requirements for the open variable
    auto m1 = unifyTerms(req1, t);
    auto m2 = unifyTerms(req2, t);
    if (!m1 || !m2) {
      resolved = true; // one side is already excluded
      break;
    }
    int open = -1;
    for (int v : vars(t)) {
      TermPtr ga = core.paramGrounding((*m1)(mkVar(v)));
      TermPtr gb = core.paramGrounding((*m2)(mkVar(v)));
      if (!isGround(ga) || !isGround(gb)) continue;
      if (!equal(ga, gb)) {
        open = v;
        break;
      }
    }
    if (open < 0) {
      resolved = true; // the witnesses agree below this point
      break;
    }
    req1 = (*m1)(mkVar(open));
    req2 = (*m2)(mkVar(open));
    w1 = core.paramGrounding(req1);
    w2 = core.paramGrounding(req2);
    curVar = open;
  }
  if (!plan.empty() && !resolved) {
    // close an unfinished chain with the single-instance construction
    if (auto pg = firstDisagreement(w1, w2)) {
      auto c1 = pathCandidate(w1, *pg, ctx);
      if (c1 && isStraight(*c1)) plan.push_back(PlannedRef{curVar, *c1, true});
    }
  }

  if (plan.empty()) {
    // single ground instance refinement from the lemma
    auto pg = firstDisagreement(conflict.w1, conflict.w2);
    if (!pg) throw std::logic_error("conflict without a disagreement position");
    auto c1 = pathCandidate(conflict.w1, *pg, ctx);
    auto c2 = pathCandidate(conflict.w2, *pg, ctx);
    std::vector<TermPtr> cs;
    if (c1) cs.push_back(*c1);
    if (c2) cs.push_back(*c2);
    std::sort(cs.begin(), cs.end(),
              [](const TermPtr& a, const TermPtr& b) { return structuralCompare(a, b) < 0; });
    if (cs.empty()) throw std::logic_error("no refinement term for conflict");
    plan.push_back(PlannedRef{conflict.originalVar, cs.front(), true});
  }
  return plan;
}

} // namespace msl
