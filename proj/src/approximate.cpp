#include "msl/approximate.hpp"

#include <algorithm>
#include <stdexcept>

#include "msl/unify.hpp"

namespace msl {

long AncestorIndex::rootOf(long clauseId) const {
  long cur = clauseId;
  auto it = parent.find(cur);
  while (it != parent.end()) {
    cur = it->second.first;
    it = parent.find(cur);
  }
  return cur;
}

std::optional<int> AncestorIndex::ancestorVar(int var) const {
  int cur = var;
  auto it = varParent.find(cur);
  while (it != varParent.end()) {
    if (it->second < 0) return std::nullopt;
    cur = it->second;
    it = varParent.find(cur);
  }
  return cur;
}

namespace {

bool posValid(const Atom& a, const Pos& p) {
  if (p.empty()) return true;
  int i = p[0];
  if (i < 1 || static_cast<size_t>(i) > a.args.size()) return false;
  const TermPtr* t = &a.args[static_cast<size_t>(i - 1)];
  for (size_t k = 1; k < p.size(); ++k) {
    int j = p[k];
    if ((*t)->isVar || j < 1 || static_cast<size_t>(j) > (*t)->args.size()) return false;
    t = &(*t)->args[static_cast<size_t>(j - 1)];
  }
  return true;
}

// replaces every occurrence of subterm `s` by `by`
TermPtr replaceAll(const TermPtr& t, const TermPtr& s, const TermPtr& by) {
  if (equal(t, s)) return by;
  if (t->isVar || t->args.empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    TermPtr r = replaceAll(a, s, by);
    changed = changed || r.get() != a.get();
    args.push_back(std::move(r));
  }
  return changed ? mkFun(t->sym, std::move(args)) : t;
}

Atom replaceAllAtom(const Atom& a, const TermPtr& s, const TermPtr& by) {
  Atom out{a.pred, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(replaceAll(t, s, by));
  return out;
}

} // namespace

std::optional<LitPos> AncestorIndex::parentLitPos(const LitPos& lp) const {
  auto pit = parent.find(lp.clause);
  if (pit == parent.end()) return std::nullopt;
  auto [par, stepIdx] = pit->second;
  const TransformStep& st = steps.at(static_cast<size_t>(stepIdx));
  const ConstrainedClause& parCl = byId.at(par);
  auto guard = [&](LitPos out) -> std::optional<LitPos> {
    const Atom& a = out.inSucc ? parCl.cl.succ.at(static_cast<size_t>(out.lit))
                               : parCl.cl.ante.at(static_cast<size_t>(out.lit));
    if (!posValid(a, out.pos)) return std::nullopt;
    return out;
  };
  if (const auto* mo = std::get_if<MonadicStep>(&st)) {
    const ConstrainedClause& child = byId.at(lp.clause);
    const Atom& a = lp.inSucc ? child.cl.succ.at(static_cast<size_t>(lp.lit))
                              : child.cl.ante.at(static_cast<size_t>(lp.lit));
    bool projected = a.pred == mo->projPred && a.args.size() == 1 && !a.args[0]->isVar &&
                     a.args[0]->sym == mo->projFunc;
    Pos p = lp.pos;
    if (projected) {
      if (!p.empty() && p[0] == 1)
        p.erase(p.begin());
      else if (!p.empty())
        return std::nullopt;
    }
    return guard(LitPos{par, lp.inSucc, lp.lit, p});
  }
  if (const auto* sh = std::get_if<ShallowStep>(&st)) {
    if (lp.clause == sh->left) {
      if (!lp.inSucc && lp.lit == 0) // S(x)
        return guard(LitPos{par, true, sh->succIdx, sh->pos});
      if (!lp.inSucc)
        return guard(LitPos{par, false, sh->leftAnteSrc.at(static_cast<size_t>(lp.lit - 1)),
                            lp.pos});
      return guard(
          LitPos{par, true, sh->leftSuccSrc.at(static_cast<size_t>(lp.lit)), lp.pos});
    }
    if (lp.clause == sh->right) {
      if (lp.inSucc && lp.lit == 0) { // S(s)
        Pos p = sh->pos;
        if (!lp.pos.empty()) {
          if (lp.pos[0] != 1) return std::nullopt;
          p.insert(p.end(), lp.pos.begin() + 1, lp.pos.end());
        }
        return guard(LitPos{par, true, sh->succIdx, p});
      }
      if (lp.inSucc)
        return guard(
            LitPos{par, true, sh->rightSuccSrc.at(static_cast<size_t>(lp.lit)), lp.pos});
      return guard(
          LitPos{par, false, sh->rightAnteSrc.at(static_cast<size_t>(lp.lit)), lp.pos});
    }
    return std::nullopt;
  }
  const auto& li = std::get<LinearStep>(st);
  if (lp.clause != li.result) return std::nullopt;
  if (!lp.inSucc) {
    size_t k = static_cast<size_t>(lp.lit);
    size_t parentIdx = k < li.dupCount ? k : k - li.dupCount;
    return guard(LitPos{par, false, static_cast<int>(parentIdx), lp.pos});
  }
  return guard(LitPos{par, true, lp.lit, lp.pos});
}

std::optional<LitPos> AncestorIndex::ancestorLitPos(const LitPos& lp) const {
  LitPos cur = lp;
  while (parent.count(cur.clause)) {
    auto up = parentLitPos(cur);
    if (!up) return std::nullopt;
    cur = *up;
  }
  return cur;
}

std::vector<ConstrainedClause> monadicProject(const std::vector<ConstrainedClause>& n,
                                              ProverContext& ctx, AncestorIndex& idx) {
  std::set<int> nonMonadic;
  for (const auto& cc : n) {
    for (const auto& a : cc.cl.ante)
      if (a.args.size() != 1) nonMonadic.insert(a.pred);
    for (const auto& a : cc.cl.succ)
      if (a.args.size() != 1) nonMonadic.insert(a.pred);
  }
  std::vector<ConstrainedClause> cur = n;
  if (nonMonadic.empty()) return cur;
  int projPred = ctx.sig.freshPred("T", 1);
  for (int p : nonMonadic) {
    int projFunc = ctx.sig.freshFunc("f" + ctx.sig.pred(p).name, ctx.sig.pred(p).arity);
    MonadicStep step{p, projPred, projFunc, {}};
    int stepIdx = static_cast<int>(idx.steps.size());
    for (auto& cc : cur) {
      bool uses = false;
      auto mapAtom = [&](const Atom& a) {
        if (a.pred != p) return a;
        uses = true;
        return Atom{projPred, {mkFun(projFunc, a.args)}};
      };
      Clause mapped;
      for (const auto& a : cc.cl.ante) mapped.ante.push_back(mapAtom(a));
      for (const auto& a : cc.cl.succ) mapped.succ.push_back(mapAtom(a));
      if (!uses) continue;
      ConstrainedClause child;
      child.cl = std::move(mapped);
      child.cons = cc.cons;
      child.id = ctx.freshId();
      step.mapped.emplace_back(cc.id, child.id);
      idx.parent[child.id] = {cc.id, stepIdx};
      idx.byId[child.id] = child;
      cc = std::move(child);
    }
    idx.steps.emplace_back(std::move(step));
  }
  return cur;
}

namespace {

// first (succIdx, argPos of length 2, s) with s complex of depth >= 1:
// exactly the positions whose extraction shrinks the deep literal
std::optional<std::tuple<int, Pos, TermPtr>> findShallowTarget(const Clause& c) {
  for (size_t e = 0; e < c.succ.size(); ++e) {
    const Atom& a = c.succ[e];
    for (size_t i = 0; i < a.args.size(); ++i) {
      const TermPtr& t = a.args[i];
      if (t->isVar || depth(t) < 2) continue;
      for (size_t j = 0; j < t->args.size(); ++j) {
        if (!t->args[j]->isVar && depth(t->args[j]) >= 1) {
          return std::make_tuple(static_cast<int>(e),
                                 Pos{static_cast<int>(i + 1), static_cast<int>(j + 1)},
                                 t->args[j]);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, Pos>> findLinearTarget(const Clause& c) {
  // first variable with a repeated succedent occurrence; replace its last
  // occurrence
  std::map<int, std::vector<std::pair<int, Pos>>> occ;
  std::vector<int> order;
  for (size_t e = 0; e < c.succ.size(); ++e) {
    for (const Pos& p : [&] {
           std::vector<Pos> out;
           const Atom& a = c.succ[e];
           for (size_t i = 0; i < a.args.size(); ++i)
             for (const Pos& q : positions(a.args[i])) {
               TermPtr sub = subtermAt(a.args[i], q);
               if (sub->isVar) {
                 Pos full{static_cast<int>(i + 1)};
                 full.insert(full.end(), q.begin(), q.end());
                 out.push_back(full);
               }
             }
           return out;
         }()) {
      const Atom& a = c.succ[e];
      TermPtr sub = a.args[static_cast<size_t>(p[0] - 1)];
      for (size_t k = 1; k < p.size(); ++k)
        sub = sub->args[static_cast<size_t>(p[k] - 1)];
      int v = sub->sym;
      if (!occ.count(v)) order.push_back(v);
      occ[v].push_back({static_cast<int>(e), p});
    }
  }
  for (int v : order) {
    if (occ[v].size() >= 2) {
      auto [e, p] = occ[v].back();
      return std::make_pair(e, p);
    }
  }
  return std::nullopt;
}

Atom atomReplaceArgPos(const Atom& a, const Pos& p, const TermPtr& by) {
  Atom out = a;
  size_t i = static_cast<size_t>(p[0] - 1);
  Pos inner(p.begin() + 1, p.end());
  out.args[i] = inner.empty() ? by : replaceAt(a.args[i], inner, by);
  return out;
}

} // namespace

bool hasShallowTarget(const ConstrainedClause& cc) {
  return findShallowTarget(cc.cl).has_value();
}

bool hasLinearTarget(const ConstrainedClause& cc) {
  return findLinearTarget(cc.cl).has_value();
}

std::pair<ConstrainedClause, ConstrainedClause> shallowStep(const ConstrainedClause& cc,
                                                            ProverContext& ctx,
                                                            AncestorIndex& idx) {
  auto target = findShallowTarget(cc.cl);
  if (!target) throw std::logic_error("shallowStep: no extraction position");
  auto [succIdx, pos, s] = *target;
  int x = ctx.sig.freshVar("V");
  int S = ctx.sig.freshPred("S", 1);
  const Atom& E = cc.cl.succ[static_cast<size_t>(succIdx)];
  Atom eNew = atomReplaceArgPos(E, pos, mkVar(x));

  ShallowStep step;
  step.src = cc.id;
  step.freshPred = S;
  step.freshVar = x;
  step.extracted = s;
  step.succIdx = succIdx;
  step.pos = pos;

  std::set<int> leftVars = atomVars(eNew);
  std::set<int> rightVars = vars(s);
  std::vector<int> succSideLeft;  // source succ indices
  std::vector<int> succSideRight;
  for (size_t e = 0; e < cc.cl.succ.size(); ++e) {
    if (static_cast<int>(e) == succIdx) continue;
    std::set<int> vs = atomVars(cc.cl.succ[e]);
    bool dl = false, dr = false;
    for (int v : vs) {
      if (leftVars.count(v)) dl = true;
      if (rightVars.count(v)) dr = true;
    }
    bool goLeft = dl || !dr; // ties to the left
    if (goLeft) {
      succSideLeft.push_back(static_cast<int>(e));
      leftVars.insert(vs.begin(), vs.end());
    } else {
      succSideRight.push_back(static_cast<int>(e));
      rightVars.insert(vs.begin(), vs.end());
    }
  }
  std::set<int> leftPosVars = leftVars;
  std::set<int> rightPosVars = rightVars;

  struct AnteAssign {
    int srcIdx;
    Atom atom;
    bool left;
  };
  std::vector<AnteAssign> anteLeft, anteRight;
  for (size_t g = 0; g < cc.cl.ante.size(); ++g) {
    const Atom& A = cc.cl.ante[g];
    Atom ext = replaceAllAtom(A, s, mkVar(x));
    bool containsS = !equalAtoms(ext, A);
    bool isVarAtom = A.args.size() == 1 && A.args[0]->isVar;
    if (isVarAtom) {
      int y = A.args[0]->sym;
      bool mustLeft = leftPosVars.count(y) != 0;
      bool mustRight = rightPosVars.count(y) != 0;
      if (mustLeft) anteLeft.push_back({static_cast<int>(g), A, true});
      if (mustRight) anteRight.push_back({static_cast<int>(g), A, false});
      if (mustLeft || mustRight) continue;
    }
    if (containsS) {
      anteLeft.push_back({static_cast<int>(g), ext, true});
      continue;
    }
    std::set<int> vs = atomVars(A);
    bool dr = false;
    for (int v : vs)
      if (rightVars.count(v)) dr = true;
    if (dr)
      anteRight.push_back({static_cast<int>(g), A, false});
    else
      anteLeft.push_back({static_cast<int>(g), A, true});
  }

  ConstrainedClause left, right;
  left.cl.ante.push_back(Atom{S, {mkVar(x)}});
  for (const auto& aa : anteLeft) {
    left.cl.ante.push_back(aa.atom);
    step.leftAnteSrc.push_back(aa.srcIdx);
  }
  left.cl.succ.push_back(eNew);
  step.leftSuccSrc.push_back(succIdx);
  for (int e : succSideLeft) {
    left.cl.succ.push_back(cc.cl.succ[static_cast<size_t>(e)]);
    step.leftSuccSrc.push_back(e);
  }
  for (const auto& aa : anteRight) {
    right.cl.ante.push_back(aa.atom);
    step.rightAnteSrc.push_back(aa.srcIdx);
  }
  right.cl.succ.push_back(Atom{S, {s}});
  step.rightSuccSrc.push_back(succIdx);
  for (int e : succSideRight) {
    right.cl.succ.push_back(cc.cl.succ[static_cast<size_t>(e)]);
    step.rightSuccSrc.push_back(e);
  }
  left.cons = cc.cons;
  right.cons = cc.cons;

  // shared shallow extraction variables are eliminated by instantiating the
  // side opposite to their positive occurrence
  {
    std::set<int> lv = clauseVars(left.cl);
    std::set<int> rv = clauseVars(right.cl);
    for (int v : lv) {
      if (!rv.count(v)) continue;
      auto et = idx.extractionTerm.find(v);
      if (et == idx.extractionTerm.end()) continue;
      // rename the extracted term's variables fresh
      Subst fresh;
      for (int w : vars(et->second))
        fresh.bind(w, mkVar(ctx.sig.freshVar(ctx.sig.varName(w))));
      TermPtr tv = fresh(et->second);
      for (int w : vars(tv)) idx.varParent[w] = -1;
      Subst inst;
      inst.bind(v, tv);
      bool positiveLeft = atomVars(eNew).count(v) != 0;
      for (int e : succSideLeft)
        if (atomVars(cc.cl.succ[static_cast<size_t>(e)]).count(v)) positiveLeft = true;
      if (positiveLeft)
        right.cl = applyToClause(inst, right.cl);
      else {
        // keep S(x) untouched; x is fresh and distinct from v
        left.cl = applyToClause(inst, left.cl);
      }
    }
  }

  {
    std::set<int> lv = clauseVars(left.cl);
    std::set<int> rv = clauseVars(right.cl);
    for (int v : lv)
      if (rv.count(v)) step.sharedVars.push_back(v);
  }

  left.id = ctx.freshId();
  right.id = ctx.freshId();
  step.left = left.id;
  step.right = right.id;
  int stepIdx = static_cast<int>(idx.steps.size());
  idx.parent[left.id] = {cc.id, stepIdx};
  idx.parent[right.id] = {cc.id, stepIdx};
  idx.varParent[x] = -1;
  idx.extractionTerm[x] = s;
  idx.byId[left.id] = left;
  idx.byId[right.id] = right;
  idx.steps.emplace_back(std::move(step));
  return {left, right};
}

ConstrainedClause linearStep(const ConstrainedClause& cc, ProverContext& ctx,
                             AncestorIndex& idx) {
  auto target = findLinearTarget(cc.cl);
  if (!target) throw std::logic_error("linearStep: no repeated succedent variable");
  auto [succIdx, pos] = *target;
  const Atom& E = cc.cl.succ[static_cast<size_t>(succIdx)];
  TermPtr sub = E.args[static_cast<size_t>(pos[0] - 1)];
  for (size_t k = 1; k < pos.size(); ++k) sub = sub->args[static_cast<size_t>(pos[k] - 1)];
  int x = sub->sym;
  int xf = ctx.sig.freshVar(ctx.sig.varName(x));
  Subst sigma;
  sigma.bind(x, mkVar(xf));

  LinearStep step;
  step.src = cc.id;
  step.var = x;
  step.freshVar = xf;
  step.succIdx = succIdx;
  step.pos = pos;

  ConstrainedClause out;
  bool inAnte = clauseVars(Clause{cc.cl.ante, {}}).count(x) != 0;
  bool inCons = cc.cons.lvars().count(x) != 0;
  if (inAnte || inCons) {
    step.dupCount = cc.cl.ante.size();
    for (const auto& a : cc.cl.ante) out.cl.ante.push_back(applyToAtom(sigma, a));
  }
  for (const auto& a : cc.cl.ante) out.cl.ante.push_back(a);
  for (size_t e = 0; e < cc.cl.succ.size(); ++e) {
    if (static_cast<int>(e) == succIdx)
      out.cl.succ.push_back(atomReplaceArgPos(cc.cl.succ[e], pos, mkVar(xf)));
    else
      out.cl.succ.push_back(cc.cl.succ[e]);
  }
  out.cons = cc.cons;
  if (inAnte || inCons) out.cons.conjoin(applyToConstraint(sigma, cc.cons));
  out.cons = normalize(out.cons, ctx.sig);
  out.id = ctx.freshId();
  step.result = out.id;
  int stepIdx = static_cast<int>(idx.steps.size());
  idx.parent[out.id] = {cc.id, stepIdx};
  idx.varParent[xf] = x;
  idx.byId[out.id] = out;
  idx.steps.emplace_back(std::move(step));
  return out;
}

ApproxResult approximate(const std::vector<ConstrainedClause>& originals, ProverContext& ctx) {
  ApproxResult res;
  for (const auto& cc : originals) res.index.byId[cc.id] = cc;
  res.clauses = monadicProject(originals, ctx, res.index);
  for (;;) {
    bool done = true;
    for (size_t i = 0; i < res.clauses.size(); ++i) {
      if (hasShallowTarget(res.clauses[i])) {
        auto [l, r] = shallowStep(res.clauses[i], ctx, res.index);
        res.clauses[i] = l;
        res.clauses.push_back(r);
        done = false;
        break;
      }
    }
    if (!done) continue;
    for (size_t i = 0; i < res.clauses.size(); ++i) {
      if (hasLinearTarget(res.clauses[i])) {
        res.clauses[i] = linearStep(res.clauses[i], ctx, res.index);
        done = false;
        break;
      }
    }
    if (done) break;
  }
  return res;
}

ConstrainedClause shallowResolvent(const ShallowStep& step, const AncestorIndex& idx,
                                   ProverContext& ctx, Subst* rhoOut) {
  const ConstrainedClause& left = idx.byId.at(step.left);
  const ConstrainedClause& right = idx.byId.at(step.right);
  Subst rho;
  for (int v : step.sharedVars) rho.bind(v, mkVar(ctx.sig.freshVar(ctx.sig.varName(v))));
  if (rhoOut) *rhoOut = rho;
  Subst xToSRho;
  xToSRho.bind(step.freshVar, rho(step.extracted));
  ConstrainedClause out;
  for (size_t i = 1; i < left.cl.ante.size(); ++i)
    out.cl.ante.push_back(applyToAtom(xToSRho, left.cl.ante[i]));
  for (const auto& a : right.cl.ante) out.cl.ante.push_back(applyToAtom(rho, a));
  out.cl.succ.push_back(applyToAtom(xToSRho, left.cl.succ[0]));
  for (size_t i = 1; i < left.cl.succ.size(); ++i) out.cl.succ.push_back(left.cl.succ[i]);
  for (size_t i = 1; i < right.cl.succ.size(); ++i)
    out.cl.succ.push_back(applyToAtom(rho, right.cl.succ[i]));
  out.cons = left.cons;
  out.cons.conjoin(applyToConstraint(rho, right.cons));
  out.cons = normalize(out.cons, ctx.sig);
  out.id = ctx.freshId();
  return out;
}

RefineOutcome refineTransform(const ConstrainedClause& cc, int var, const TermPtr& t,
                              ProverContext& ctx) {
  if (!clauseVars(cc.cl).count(var))
    throw std::invalid_argument("refinement variable not in clause");
  if (!isStraight(t)) throw std::invalid_argument("refinement term not straight");
  std::set<int> cvars = clauseVars(cc.cl);
  for (int v : cc.cons.lvars()) cvars.insert(v);
  for (int v : vars(t))
    if (cvars.count(v)) throw std::invalid_argument("refinement term variables not fresh");

  RefineOutcome out;
  {
    Constraint pi = cc.cons;
    pi.add(AtomicConstraint{mkVar(var), t});
    pi = normalize(pi, ctx.sig);
    if (!pi.isBottom() && isSolvable(pi, ctx.groundSig())) {
      ConstrainedClause child;
      child.cl = cc.cl;
      child.cons = pi;
      child.id = ctx.freshId();
      out.constrained = std::move(child);
    }
  }
  {
    Subst inst;
    inst.bind(var, t);
    Constraint pi = normalize(applyToConstraint(inst, cc.cons), ctx.sig);
    if (!pi.isBottom() && isSolvable(pi, ctx.groundSig())) {
      ConstrainedClause child;
      child.cl = applyToClause(inst, cc.cl);
      child.cons = pi;
      child.id = ctx.freshId();
      out.instantiated = std::move(child);
    }
  }
  return out;
}

} // namespace msl
