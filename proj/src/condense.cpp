#include "msl/condense.hpp"

#include <algorithm>
#include <functional>

#include "msl/unify.hpp"

namespace msl {

namespace {

struct LitRef {
  bool pos;
  const Atom* atom;
};

std::vector<LitRef> literals(const Clause& c) {
  std::vector<LitRef> out;
  for (const auto& a : c.ante) out.push_back({false, &a});
  for (const auto& a : c.succ) out.push_back({true, &a});
  return out;
}

bool matchAtomInto(const Atom& pat, const Atom& target, Subst& s) {
  if (pat.pred != target.pred) return false;
  return matchLists(pat.args, target.args, s);
}

// Checks pi*sigma subseteq pi (conjunct sets, canonical rhs).
bool constraintSubset(const Constraint& pi, const Subst& sigma, Signature& sig) {
  if (pi.isBottom()) return true;
  for (const auto& c : pi.conjuncts()) {
    TermPtr lhs = sigma(c.lhs);
    AtomicConstraint inst = canonicalizeRhs(AtomicConstraint{lhs, c.rhs}, sig);
    bool found = false;
    for (const auto& d : pi.conjuncts())
      if (atomicCompare(inst, d) == 0) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

// Tries to map every removed literal onto a kept one, binding only variables
// outside the kept part.
bool matchRemoved(const std::vector<LitRef>& removed, const std::vector<LitRef>& kept,
                  size_t at, Subst& s, const std::set<int>& keptVars) {
  if (at == removed.size()) return true;
  const LitRef& L = removed[at];
  for (const auto& K : kept) {
    if (K.pos != L.pos) continue;
    Subst trial = s;
    if (!matchAtomInto(*L.atom, *K.atom, trial)) continue;
    bool idOnKept = true;
    for (const auto& [v, t] : trial.entries())
      if (keptVars.count(v) && !(t->isVar && t->sym == v)) {
        idOnKept = false;
        break;
      }
    if (!idOnKept) continue;
    if (matchRemoved(removed, kept, at + 1, trial, keptVars)) {
      s = trial;
      return true;
    }
  }
  return false;
}

} // namespace

CondenseOutcome condense(const ConstrainedClause& cc, Signature& sig) {
  CondenseOutcome out{cc, false, Subst()};
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<LitRef> lits = literals(out.cc.cl);
    size_t n = lits.size();
    if (n < 2) break;
    // subsets to remove, by increasing size
    for (size_t popcount = 1; popcount < n && !progress; ++popcount) {
      std::vector<bool> pick(n, false);
      std::fill(pick.begin(), pick.begin() + static_cast<long>(popcount), true);
      do {
        std::vector<LitRef> removed, kept;
        for (size_t i = 0; i < n; ++i)
          (pick[i] ? removed : kept).push_back(lits[i]);
        std::set<int> keptVars;
        for (const auto& K : kept)
          for (const auto& t : K.atom->args) varsInto(t, keptVars);
        Subst s;
        if (!matchRemoved(removed, kept, 0, s, keptVars)) continue;
        // sigma must not move kept variables; drop identity bindings
        Subst sigma;
        for (const auto& [v, t] : s.entries())
          if (!(t->isVar && t->sym == v)) sigma.bind(v, t);
        if (!constraintSubset(out.cc.cons, sigma, sig)) continue;
        // build the condensed clause preserving literal order
        Clause next;
        {
          std::set<const Atom*> removedSet;
          for (const auto& R : removed) removedSet.insert(R.atom);
          for (const auto& a : out.cc.cl.ante)
            if (!removedSet.count(&a)) next.ante.push_back(a);
          for (const auto& a : out.cc.cl.succ)
            if (!removedSet.count(&a)) next.succ.push_back(a);
        }
        Constraint nextCons = normalize(applyToConstraint(sigma, out.cc.cons), sig);
        out.cc.cl = std::move(next);
        out.cc.cons = std::move(nextCons);
        out.matcher.compose(sigma);
        out.changed = true;
        progress = true;
        break;
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  }
  return out;
}

namespace {

// Backtracking bijection between literal multisets under a variable
// renaming; `fwd`/`bwd` keep the renaming injective.
bool variantLits(const std::vector<LitRef>& xs, const std::vector<LitRef>& ys, size_t at,
                 std::vector<bool>& used, std::map<int, int>& fwd, std::map<int, int>& bwd);

bool variantTerm(const TermPtr& a, const TermPtr& b, std::map<int, int>& fwd,
                 std::map<int, int>& bwd) {
  if (a->isVar != b->isVar) return false;
  if (a->isVar) {
    auto itF = fwd.find(a->sym);
    auto itB = bwd.find(b->sym);
    if (itF == fwd.end() && itB == bwd.end()) {
      fwd[a->sym] = b->sym;
      bwd[b->sym] = a->sym;
      return true;
    }
    return itF != fwd.end() && itB != bwd.end() && itF->second == b->sym &&
           itB->second == a->sym;
  }
  if (a->sym != b->sym || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!variantTerm(a->args[i], b->args[i], fwd, bwd)) return false;
  return true;
}

bool variantAtom(const Atom& a, const Atom& b, std::map<int, int>& fwd,
                 std::map<int, int>& bwd) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!variantTerm(a.args[i], b.args[i], fwd, bwd)) return false;
  return true;
}

bool variantLits(const std::vector<LitRef>& xs, const std::vector<LitRef>& ys, size_t at,
                 std::vector<bool>& used, std::map<int, int>& fwd,
                 std::map<int, int>& bwd) {
  if (at == xs.size()) return true;
  for (size_t j = 0; j < ys.size(); ++j) {
    if (used[j] || ys[j].pos != xs[at].pos) continue;
    auto fwdSave = fwd;
    auto bwdSave = bwd;
    if (variantAtom(*xs[at].atom, *ys[j].atom, fwd, bwd)) {
      used[j] = true;
      if (variantLits(xs, ys, at + 1, used, fwd, bwd)) return true;
      used[j] = false;
    }
    fwd = std::move(fwdSave);
    bwd = std::move(bwdSave);
  }
  return false;
}

// Matches constraint conjunct sets under an extensible renaming.
bool variantConstraints(const Constraint& a, const Constraint& b, std::map<int, int>& fwd,
                        std::map<int, int>& bwd, size_t at, std::vector<bool>& used) {
  if (a.conjuncts().size() != b.conjuncts().size()) return false;
  if (at == a.conjuncts().size()) return true;
  const auto& c = a.conjuncts()[at];
  for (size_t j = 0; j < b.conjuncts().size(); ++j) {
    if (used[j]) continue;
    const auto& d = b.conjuncts()[j];
    if (structuralCompare(c.rhs, d.rhs) != 0) continue; // canonical rhs
    auto fwdSave = fwd;
    auto bwdSave = bwd;
    if (variantTerm(c.lhs, d.lhs, fwd, bwd)) {
      used[j] = true;
      if (variantConstraints(a, b, fwd, bwd, at + 1, used)) return true;
      used[j] = false;
    }
    fwd = std::move(fwdSave);
    bwd = std::move(bwdSave);
  }
  return false;
}

} // namespace

bool variant(const ConstrainedClause& a, const ConstrainedClause& b, const Signature&) {
  if (a.cl.ante.size() != b.cl.ante.size() || a.cl.succ.size() != b.cl.succ.size())
    return false;
  if (a.cons.isBottom() != b.cons.isBottom()) return false;
  if (a.cons.conjuncts().size() != b.cons.conjuncts().size()) return false;
  std::vector<LitRef> xs = literals(a.cl), ys = literals(b.cl);
  std::vector<bool> used(ys.size(), false);
  std::map<int, int> fwd, bwd;
  // interleave: clause literals first, then the constraint sets
  std::function<bool(size_t)> go = [&](size_t at) -> bool {
    if (at == xs.size()) {
      std::vector<bool> usedC(b.cons.conjuncts().size(), false);
      return variantConstraints(a.cons, b.cons, fwd, bwd, 0, usedC);
    }
    for (size_t j = 0; j < ys.size(); ++j) {
      if (used[j] || ys[j].pos != xs[at].pos) continue;
      auto fwdSave = fwd;
      auto bwdSave = bwd;
      if (variantAtom(*xs[at].atom, *ys[j].atom, fwd, bwd)) {
        used[j] = true;
        if (go(at + 1)) return true;
        used[j] = false;
      }
      fwd = std::move(fwdSave);
      bwd = std::move(bwdSave);
    }
    return false;
  };
  return go(0);
}

namespace {

bool subsumeLits(const std::vector<LitRef>& pats, const std::vector<LitRef>& targets,
                 size_t at, Subst& s, const std::function<bool(const Subst&)>& finish) {
  if (at == pats.size()) return finish(s);
  for (const auto& T : targets) {
    if (T.pos != pats[at].pos) continue;
    Subst trial = s;
    if (!matchAtomInto(*pats[at].atom, *T.atom, trial)) continue;
    if (subsumeLits(pats, targets, at + 1, trial, finish)) return true;
  }
  return false;
}

} // namespace

bool subsumes(const ConstrainedClause& general, const ConstrainedClause& specific,
              Signature& sig) {
  if (general.cl.size() > specific.cl.size()) return false;
  std::vector<LitRef> pats = literals(general.cl);
  std::vector<LitRef> targets = literals(specific.cl);
  Subst s;
  auto finish = [&](const Subst& sigma) {
    Constraint inst = normalize(applyToConstraint(sigma, general.cons), sig);
    if (inst.isBottom()) return false;
    for (const auto& c : inst.conjuncts()) {
      if (!c.lhs->isVar) return false;
      bool implied = false;
      for (const auto& d : specific.cons.conjuncts()) {
        if (!d.lhs->isVar || d.lhs->sym != c.lhs->sym) continue;
        Subst m;
        if (matchTerm(d.rhs, c.rhs, m)) { // c.rhs instance of d.rhs
          implied = true;
          break;
        }
      }
      if (!implied) return false;
    }
    return true;
  };
  return subsumeLits(pats, targets, 0, s, finish);
}

} // namespace msl
