#include "msl/ordering.hpp"

#include <map>

namespace msl {

Cmp flip(Cmp c) {
  switch (c) {
    case Cmp::Less: return Cmp::Greater;
    case Cmp::Greater: return Cmp::Less;
    default: return c;
  }
}

int KBO::weight(const TermPtr& t) const { return symbolCount(t); }

int KBO::prec(bool isPred, int sym) const {
  return isPred ? sig_->pred(sym).prec : sig_->func(sym).prec;
}

namespace {

void countVars(const TermPtr& t, std::map<int, int>& into, int coef) {
  if (t->isVar) {
    into[t->sym] += coef;
    return;
  }
  for (const auto& a : t->args) countVars(a, into, coef);
}

// true when every variable occurs in `a`-side at least as often as in `b`
bool varCondition(const std::map<int, int>& balance) {
  for (const auto& [v, d] : balance)
    if (d < 0) return false;
  return true;
}

} // namespace

Cmp KBO::cmpToplevel(bool aPred, int aSym, const std::vector<TermPtr>& aArgs, bool bPred,
                     int bSym, const std::vector<TermPtr>& bArgs) const {
  std::map<int, int> balance;
  int wa = 1, wb = 1;
  for (const auto& t : aArgs) {
    wa += weight(t);
    countVars(t, balance, +1);
  }
  for (const auto& t : bArgs) {
    wb += weight(t);
    countVars(t, balance, -1);
  }
  std::map<int, int> balanceBA;
  for (const auto& [v, d] : balance) balanceBA[v] = -d;
  bool geAB = varCondition(balance);
  bool geBA = varCondition(balanceBA);
  if (wa > wb) return geAB ? Cmp::Greater : Cmp::Incomparable;
  if (wa < wb) return geBA ? Cmp::Less : Cmp::Incomparable;
  int pa = prec(aPred, aSym), pb = prec(bPred, bSym);
  if (pa != pb) {
    if (pa > pb) return geAB ? Cmp::Greater : Cmp::Incomparable;
    return geBA ? Cmp::Less : Cmp::Incomparable;
  }
  // same symbol: lexicographic argument comparison
  for (size_t i = 0; i < aArgs.size(); ++i) {
    Cmp c = cmpTerm(aArgs[i], bArgs[i]);
    if (c == Cmp::Equal) continue;
    if (c == Cmp::Incomparable) return Cmp::Incomparable;
    if (c == Cmp::Greater) return geAB ? Cmp::Greater : Cmp::Incomparable;
    return geBA ? Cmp::Less : Cmp::Incomparable;
  }
  return Cmp::Equal;
}

Cmp KBO::cmpTerm(const TermPtr& a, const TermPtr& b) const {
  if (equal(a, b)) return Cmp::Equal;
  if (a->isVar && b->isVar) return Cmp::Incomparable;
  if (a->isVar) return occurs(a->sym, b) ? Cmp::Less : Cmp::Incomparable;
  if (b->isVar) return occurs(b->sym, a) ? Cmp::Greater : Cmp::Incomparable;
  return cmpToplevel(false, a->sym, a->args, false, b->sym, b->args);
}

Cmp KBO::cmpAtom(const Atom& a, const Atom& b) const {
  if (equalAtoms(a, b)) return Cmp::Equal;
  return cmpToplevel(true, a.pred, a.args, true, b.pred, b.args);
}

Cmp KBO::cmpLit(const Atom& a, bool aPos, const Atom& b, bool bPos) const {
  Cmp c = cmpAtom(a, b);
  if (c != Cmp::Equal) return c;
  // same atom: {A,A} vs {A}
  if (aPos == bPos) return Cmp::Equal;
  return aPos ? Cmp::Less : Cmp::Greater;
}

Cmp KBO::cmpClause(const Clause& a, const Clause& b) const {
  // multiset extension: remove equal literals pairwise, then a > b iff every
  // remaining b-literal is below some remaining a-literal
  struct L {
    const Atom* atom;
    bool pos;
  };
  std::vector<L> la, lb;
  for (const auto& x : a.ante) la.push_back({&x, false});
  for (const auto& x : a.succ) la.push_back({&x, true});
  for (const auto& x : b.ante) lb.push_back({&x, false});
  for (const auto& x : b.succ) lb.push_back({&x, true});
  std::vector<bool> usedB(lb.size(), false);
  std::vector<L> restA;
  for (const auto& x : la) {
    bool matched = false;
    for (size_t j = 0; j < lb.size(); ++j) {
      if (usedB[j]) continue;
      if (x.pos == lb[j].pos && equalAtoms(*x.atom, *lb[j].atom)) {
        usedB[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) restA.push_back(x);
  }
  std::vector<L> restB;
  for (size_t j = 0; j < lb.size(); ++j)
    if (!usedB[j]) restB.push_back(lb[j]);
  if (restA.empty() && restB.empty()) return Cmp::Equal;
  if (restA.empty()) return Cmp::Less;
  if (restB.empty()) return Cmp::Greater;
  auto dominates = [&](const std::vector<L>& xs, const std::vector<L>& ys) {
    for (const auto& y : ys) {
      bool dominated = false;
      for (const auto& x : xs)
        if (cmpLit(*x.atom, x.pos, *y.atom, y.pos) == Cmp::Greater) {
          dominated = true;
          break;
        }
      if (!dominated) return false;
    }
    return true;
  };
  bool ab = dominates(restA, restB);
  bool ba = dominates(restB, restA);
  if (ab && !ba) return Cmp::Greater;
  if (ba && !ab) return Cmp::Less;
  return Cmp::Incomparable;
}

bool KBO::maximalIn(const Clause& c, bool inSucc, size_t idx, bool strict) const {
  const Atom& a = inSucc ? c.succ[idx] : c.ante[idx];
  bool aPos = inSucc;
  for (size_t i = 0; i < c.ante.size(); ++i) {
    if (!inSucc && i == idx) continue;
    Cmp r = cmpLit(c.ante[i], false, a, aPos);
    if (r == Cmp::Greater) return false;
    if (strict && r == Cmp::Equal) return false;
  }
  for (size_t i = 0; i < c.succ.size(); ++i) {
    if (inSucc && i == idx) continue;
    Cmp r = cmpLit(c.succ[i], true, a, aPos);
    if (r == Cmp::Greater) return false;
    if (strict && r == Cmp::Equal) return false;
  }
  return true;
}

} // namespace msl
