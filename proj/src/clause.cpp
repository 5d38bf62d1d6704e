#include "msl/clause.hpp"

#include <algorithm>

namespace msl {

bool equalAtoms(const Atom& a, const Atom& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!equal(a.args[i], b.args[i])) return false;
  return true;
}

int atomCompareStructural(const Atom& a, const Atom& b) {
  if (a.pred != b.pred) return a.pred < b.pred ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); ++i) {
    int c = structuralCompare(a.args[i], b.args[i]);
    if (c != 0) return c;
  }
  return 0;
}

Atom applyToAtom(const Subst& s, const Atom& a) {
  Atom out{a.pred, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(s(t));
  return out;
}

std::set<int> atomVars(const Atom& a) {
  std::set<int> out;
  for (const auto& t : a.args) varsInto(t, out);
  return out;
}

std::string show(const Atom& a, const Signature& sig) {
  std::string s = sig.pred(a.pred).name + "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += show(a.args[i], sig);
  }
  return s + ")";
}

Clause applyToClause(const Subst& s, const Clause& c) {
  Clause out;
  out.ante.reserve(c.ante.size());
  out.succ.reserve(c.succ.size());
  for (const auto& a : c.ante) out.ante.push_back(applyToAtom(s, a));
  for (const auto& a : c.succ) out.succ.push_back(applyToAtom(s, a));
  return out;
}

std::set<int> clauseVars(const Clause& c) {
  std::set<int> out;
  for (const auto& a : c.ante)
    for (const auto& t : a.args) varsInto(t, out);
  for (const auto& a : c.succ)
    for (const auto& t : a.args) varsInto(t, out);
  return out;
}

int clauseSymbolCount(const Clause& c) {
  int n = 0;
  for (const auto& a : c.ante) {
    n += 1;
    for (const auto& t : a.args) n += symbolCount(t);
  }
  for (const auto& a : c.succ) {
    n += 1;
    for (const auto& t : a.args) n += symbolCount(t);
  }
  return n;
}

static bool multisetEqual(const std::vector<Atom>& xs, const std::vector<Atom>& ys) {
  if (xs.size() != ys.size()) return false;
  std::vector<bool> used(ys.size(), false);
  for (const auto& x : xs) {
    bool found = false;
    for (size_t j = 0; j < ys.size(); ++j) {
      if (!used[j] && equalAtoms(x, ys[j])) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool equalClauses(const Clause& a, const Clause& b) {
  return multisetEqual(a.ante, b.ante) && multisetEqual(a.succ, b.succ);
}

static std::vector<Atom> dedupAtoms(const std::vector<Atom>& xs) {
  std::vector<Atom> out;
  for (const auto& x : xs) {
    bool seen = false;
    for (const auto& y : out)
      if (equalAtoms(x, y)) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(x);
  }
  return out;
}

Clause dedup(const Clause& c) { return Clause{dedupAtoms(c.ante), dedupAtoms(c.succ)}; }

bool equalModuloDup(const Clause& a, const Clause& b) {
  return equalClauses(dedup(a), dedup(b));
}

std::string show(const Clause& c, const Signature& sig) {
  std::string s;
  for (size_t i = 0; i < c.ante.size(); ++i) {
    if (i) s += ", ";
    s += show(c.ante[i], sig);
  }
  s += " -> ";
  for (size_t i = 0; i < c.succ.size(); ++i) {
    if (i) s += ", ";
    s += show(c.succ[i], sig);
  }
  return s;
}

ConstrainedClause applyToConstrained(const Subst& s, const ConstrainedClause& cc) {
  ConstrainedClause out = cc;
  out.cl = applyToClause(s, cc.cl);
  out.cons = applyToConstraint(s, cc.cons);
  return out;
}

std::string show(const ConstrainedClause& cc, const Signature& sig) {
  std::string s;
  for (size_t i = 0; i < cc.cl.ante.size(); ++i) {
    if (i) s += ", ";
    s += show(cc.cl.ante[i], sig);
  }
  s += " -> ";
  for (size_t i = 0; i < cc.cl.succ.size(); ++i) {
    if (i) s += ", ";
    s += show(cc.cl.succ[i], sig);
  }
  if (!cc.cons.isTop()) s += " | " + show(cc.cons, sig);
  return s;
}

Subst renameApart(ConstrainedClause& cc, Signature& sig) {
  std::set<int> vs = clauseVars(cc.cl);
  for (int v : cc.cons.lvars()) vs.insert(v);
  Subst rho;
  for (int v : vs) rho.bind(v, mkVar(sig.freshVar(sig.varName(v))));
  cc.cl = applyToClause(rho, cc.cl);
  cc.cons = applyToConstraint(rho, cc.cons);
  return rho;
}

ClauseClassReport classify(const ConstrainedClause& cc, const Signature& sig) {
  ClauseClassReport r;
  for (const auto& a : cc.cl.ante)
    if (sig.pred(a.pred).arity != 1) r.monadicOnly = false;
  for (const auto& a : cc.cl.succ)
    if (sig.pred(a.pred).arity != 1) r.monadicOnly = false;
  std::set<int> seenSuccVars;
  for (size_t i = 0; i < cc.cl.succ.size(); ++i) {
    const Atom& a = cc.cl.succ[i];
    bool deep = false;
    for (const auto& t : a.args)
      if (!isShallow(t)) deep = true;
    if (deep) {
      r.positiveShallow = false;
      r.deepSucc.push_back(static_cast<int>(i));
    }
    // positive linear: each atom linear and atoms pairwise variable disjoint
    std::vector<int> occ;
    for (const auto& t : a.args) varOccurrences(t, occ);
    std::set<int> local;
    bool nonlinear = false;
    for (int v : occ) {
      if (!local.insert(v).second) nonlinear = true;
      if (seenSuccVars.count(v)) nonlinear = true;
    }
    for (int v : local) seenSuccVars.insert(v);
    if (nonlinear) {
      r.positiveLinear = false;
      r.nonlinearSucc.push_back(static_cast<int>(i));
    }
  }
  r.isMSL = r.monadicOnly && r.positiveShallow && r.positiveLinear;
  return r;
}

} // namespace msl
