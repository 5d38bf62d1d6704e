#include "msl/lift.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "msl/unify.hpp"

namespace msl {

Clause ConflictingCore::groundClauseOf(const CoreEntry& e, const AncestorIndex& idx) const {
  return applyToClause(e.ground, idx.byId.at(e.anchor).cl);
}

namespace {

Subst composed(const Subst& first, const Subst& then) {
  Subst out = first;
  out.compose(then);
  return out;
}

} // namespace

ConflictingCore extractCore(const SaturationResult& unsat, const AncestorIndex& idx,
                            ProverContext& ctx) {
  if (unsat.verdict != SaturationResult::Verdict::EmptyClause || !unsat.derivation)
    throw std::invalid_argument("extractCore requires an empty-clause result");
  const auto& archive = unsat.derivation->byId;
  ConflictingCore core;
  core.paramConstraint = archive.at(unsat.emptyClauseId).cons;

  std::function<void(long, const Subst&)> walk = [&](long id, const Subst& theta) {
    const ConstrainedClause& rec = archive.at(id);
    switch (rec.prov.rule) {
      case Rule::Input: {
        core.entries.push_back(CoreEntry{id, theta, Subst()});
        return;
      }
      case Rule::Condensation: {
        walk(rec.prov.left, composed(rec.prov.condenser, theta));
        return;
      }
      case Rule::Factoring: {
        Subst full = rec.prov.condensed ? composed(rec.prov.condenser, theta) : theta;
        walk(rec.prov.left, composed(rec.prov.mgu, full));
        return;
      }
      case Rule::Resolution: {
        Subst full = rec.prov.condensed ? composed(rec.prov.condenser, theta) : theta;
        Subst viaMgu = composed(rec.prov.mgu, full);
        walk(rec.prov.left, viaMgu);
        walk(rec.prov.right, composed(rec.prov.rightRename, viaMgu));
        return;
      }
    }
  };
  walk(unsat.emptyClauseId, Subst());

  // parameters: every variable left free by the composed instantiations
  std::set<int> params = core.paramConstraint.lvars();
  for (auto& e : core.entries) {
    const ConstrainedClause& anchor = idx.byId.count(e.anchor)
                                          ? idx.byId.at(e.anchor)
                                          : archive.at(e.anchor);
    std::set<int> avars = clauseVars(anchor.cl);
    for (int v : anchor.cons.lvars()) avars.insert(v);
    for (int v : avars) {
      const TermPtr* b = e.param.lookup(v);
      if (!b)
        params.insert(v);
      else
        varsInto(*b, params);
    }
  }
  auto delta = minimalSolution(normalize(core.paramConstraint, ctx.sig), ctx.groundSig(), params);
  if (!delta) throw std::logic_error("core constraint of a derived empty clause unsolvable");
  core.paramGrounding = *delta;
  for (auto& e : core.entries) {
    const ConstrainedClause& anchor = idx.byId.count(e.anchor)
                                          ? idx.byId.at(e.anchor)
                                          : archive.at(e.anchor);
    std::set<int> avars = clauseVars(anchor.cl);
    for (int v : anchor.cons.lvars()) avars.insert(v);
    for (int v : avars) {
      const TermPtr* b = e.param.lookup(v);
      TermPtr pv = b ? *b : mkVar(v);
      if (!b) e.param.bind(v, pv);
      e.ground.bind(v, core.paramGrounding(pv));
    }
    if (!isSolution(e.ground, anchor.cons))
      throw std::logic_error("core grounding violates a leaf constraint");
  }

  // completeness: every literal needs a complementary partner
  core.complete = true;
  {
    std::vector<std::pair<Atom, bool>> lits;
    for (const auto& e : core.entries) {
      Clause g = core.groundClauseOf(e, idx);
      for (const auto& a : g.ante) lits.emplace_back(a, false);
      for (const auto& a : g.succ) lits.emplace_back(a, true);
    }
    for (const auto& [a, pos] : lits) {
      bool found = false;
      for (const auto& [b, bpos] : lits)
        if (pos != bpos && equalAtoms(a, b)) {
          found = true;
          break;
        }
      if (!found) core.complete = false;
    }
  }
  return core;
}

bool coreGroundUnsat(const ConflictingCore& core, const AncestorIndex& idx,
                     const Signature& sig) {
  GroundProblem g;
  for (const auto& e : core.entries) {
    Clause inst = core.groundClauseOf(e, idx);
    std::vector<int> lits;
    for (const auto& a : inst.ante) lits.push_back(-g.intern(a));
    for (const auto& a : inst.succ) lits.push_back(g.intern(a));
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    g.clauses.push_back(std::move(lits));
  }
  (void)sig;
  return !dpll(g).satisfiable;
}

namespace {

struct WorkEntry {
  long anchor;
  Subst param;
  Subst ground;
};

// Is `groundInst` equal to some solution instance of (C;pi) modulo duplicate
// literal elimination? On success `thetaOut` holds the matcher.
bool instanceOfModDup(const Clause& groundInst, const ConstrainedClause& cc,
                      Subst& thetaOut) {
  Clause g = dedup(groundInst);
  Clause c = dedup(cc.cl);
  struct Lit {
    const Atom* a;
    bool pos;
  };
  std::vector<Lit> pats, targets;
  for (const auto& a : c.ante) pats.push_back({&a, false});
  for (const auto& a : c.succ) pats.push_back({&a, true});
  for (const auto& a : g.ante) targets.push_back({&a, false});
  for (const auto& a : g.succ) targets.push_back({&a, true});
  std::vector<int> covered(targets.size(), 0);
  std::function<bool(size_t, Subst&)> go = [&](size_t at, Subst& s) -> bool {
    if (at == pats.size()) {
      for (size_t j = 0; j < targets.size(); ++j)
        if (!covered[j]) return false;
      return isSolution(s, cc.cons);
    }
    for (size_t j = 0; j < targets.size(); ++j) {
      if (targets[j].pos != pats[at].pos || targets[j].a->pred != pats[at].a->pred) continue;
      Subst trial = s;
      if (!matchLists(pats[at].a->args, targets[j].a->args, trial)) continue;
      ++covered[j];
      if (go(at + 1, trial)) {
        s = trial;
        return true;
      }
      --covered[j];
    }
    return false;
  };
  Subst s;
  if (!go(0, s)) return false;
  thetaOut = s;
  return true;
}

} // namespace

LiftOutcome lift(const ConflictingCore& core, const AncestorIndex& idx, ProverContext& ctx) {
  (void)ctx;
  LiftOutcome out;
  std::vector<WorkEntry> entries;
  for (const auto& e : core.entries) entries.push_back({e.anchor, e.param, e.ground});

  auto makeConflict = [&](long source, int v1, int v2, const Subst& param,
                          const Subst& ground, const Clause& conflictGround) {
    LiftConflict c;
    c.sourceClause = source;
    c.originalClause = idx.rootOf(source);
    c.var1 = v1;
    c.var2 = v2;
    auto av = idx.ancestorVar(v1);
    if (!av)
      throw std::logic_error("conflict variable has no ancestor in the original clause");
    c.originalVar = *av;
    c.u1 = param(mkVar(v1));
    c.u2 = param(mkVar(v2));
    c.w1 = ground(mkVar(v1));
    c.w2 = ground(mkVar(v2));
    c.conflictGround = conflictGround;
    out.conflict = c;
    out.lifted = false;
  };

  for (int s = static_cast<int>(idx.steps.size()) - 1; s >= 0; --s) {
    const TransformStep& st = idx.steps[static_cast<size_t>(s)];
    if (const auto* mo = std::get_if<MonadicStep>(&st)) {
      for (auto& e : entries)
        for (const auto& [src, dst] : mo->mapped)
          if (e.anchor == dst) e.anchor = src;
      continue;
    }
    if (const auto* li = std::get_if<LinearStep>(&st)) {
      const ConstrainedClause& src = idx.byId.at(li->src);
      const ConstrainedClause& child = idx.byId.at(li->result);
      for (auto& e : entries) {
        if (e.anchor != li->result) continue;
        TermPtr w1 = e.ground(mkVar(li->var));
        TermPtr w2 = e.ground(mkVar(li->freshVar));
        if (equal(w1, w2)) {
          e.anchor = li->src;
          continue; // substitutions already cover the source variables
        }
        Clause groundInst = applyToClause(e.ground, child.cl);
        Subst theta;
        if (instanceOfModDup(groundInst, src, theta)) {
          e.anchor = li->src;
          e.param = theta;
          e.ground = theta;
          continue;
        }
        makeConflict(li->src, li->var, li->freshVar, e.param, e.ground, groundInst);
        return out;
      }
      continue;
    }
    const auto& sh = std::get<ShallowStep>(st);
    const ConstrainedClause& src = idx.byId.at(sh.src);
    const ConstrainedClause& left = idx.byId.at(sh.left);
    const ConstrainedClause& right = idx.byId.at(sh.right);
    std::vector<WorkEntry> ls, rs, rest;
    for (auto& e : entries) {
      if (e.anchor == sh.left)
        ls.push_back(e);
      else if (e.anchor == sh.right)
        rs.push_back(e);
      else
        rest.push_back(e);
    }
    if (ls.empty() && rs.empty()) {
      entries = std::move(rest);
      continue;
    }
    std::vector<bool> rUsed(rs.size(), false);
    for (const auto& l : ls) {
      TermPtr su = l.ground(left.cl.ante[0].args[0]); // value of S(x)
      bool paired = false;
      for (size_t j = 0; j < rs.size(); ++j) {
        TermPtr sv = rs[j].ground(right.cl.succ[0].args[0]); // value of S(s)
        if (!equal(su, sv)) continue;
        paired = true;
        rUsed[j] = true;
        const WorkEntry& r = rs[j];
        // the resolvent of the two ground instances
        Clause resolvent;
        for (size_t i = 1; i < left.cl.ante.size(); ++i)
          resolvent.ante.push_back(applyToAtom(l.ground, left.cl.ante[i]));
        for (const auto& a : right.cl.ante)
          resolvent.ante.push_back(applyToAtom(r.ground, a));
        for (const auto& a : left.cl.succ)
          resolvent.succ.push_back(applyToAtom(l.ground, a));
        for (size_t i = 1; i < right.cl.succ.size(); ++i)
          resolvent.succ.push_back(applyToAtom(r.ground, right.cl.succ[i]));
        // shared variables must have been instantiated consistently
        int bad = -1;
        for (int v : sh.sharedVars)
          if (!equal(l.ground(mkVar(v)), r.ground(mkVar(v)))) {
            bad = v;
            break;
          }
        if (bad < 0) {
          WorkEntry merged;
          merged.anchor = sh.src;
          std::set<int> lv = clauseVars(left.cl);
          std::set<int> srcVars = clauseVars(src.cl);
          for (int v : src.cons.lvars()) srcVars.insert(v);
          for (int v : srcVars) {
            if (lv.count(v)) {
              merged.param.bind(v, l.param(mkVar(v)));
              merged.ground.bind(v, l.ground(mkVar(v)));
            } else {
              merged.param.bind(v, r.param(mkVar(v)));
              merged.ground.bind(v, r.ground(mkVar(v)));
            }
          }
          rest.push_back(std::move(merged));
          continue;
        }
        Subst theta;
        if (instanceOfModDup(resolvent, src, theta)) {
          rest.push_back(WorkEntry{sh.src, theta, theta});
          continue;
        }
        // parameterized/ground values of the pair across the two sides
        Subst pairParam, pairGround;
        pairParam.bind(sh.freshVar, l.param(mkVar(bad)));
        pairGround.bind(sh.freshVar, l.ground(mkVar(bad)));
        pairParam.bind(bad, r.param(mkVar(bad)));
        pairGround.bind(bad, r.ground(mkVar(bad)));
        // var1 = occurrence on the left side, var2 = renamed right occurrence
        LiftConflict c;
        c.sourceClause = sh.src;
        c.originalClause = idx.rootOf(sh.src);
        c.var1 = bad;
        c.var2 = bad;
        auto av = idx.ancestorVar(bad);
        if (!av)
          throw std::logic_error("shared shallow variable has no original ancestor");
        c.originalVar = *av;
        c.u1 = l.param(mkVar(bad));
        c.u2 = r.param(mkVar(bad));
        c.w1 = l.ground(mkVar(bad));
        c.w2 = r.ground(mkVar(bad));
        c.conflictGround = resolvent;
        out.conflict = c;
        out.lifted = false;
        return out;
      }
      if (!paired)
        throw std::logic_error("incomplete core: unpaired extraction literal");
    }
    for (size_t j = 0; j < rs.size(); ++j)
      if (!rUsed[j]) throw std::logic_error("incomplete core: unpaired S-producer");
    entries = std::move(rest);
  }

  out.lifted = true;
  for (const auto& e : entries) {
    const ConstrainedClause& orig = idx.byId.at(e.anchor);
    if (!isSolution(e.ground, orig.cons))
      throw std::logic_error("lifted instantiation violates an original constraint");
    out.refutation.emplace_back(e.anchor, applyToClause(e.ground, orig.cl));
  }
  return out;
}

} // namespace msl
