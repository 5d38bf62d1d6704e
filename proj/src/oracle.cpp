#include "msl/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "msl/unify.hpp"

namespace msl {

int GroundProblem::intern(const Atom& a) {
  for (size_t i = 0; i < atoms.size(); ++i)
    if (equalAtoms(atoms[i], a)) return static_cast<int>(i + 1);
  atoms.push_back(a);
  return static_cast<int>(atoms.size());
}

std::string GroundProblem::showClause(size_t idx, const Signature& sig) const {
  std::string s;
  for (int lit : clauses[idx]) {
    if (!s.empty()) s += " ";
    if (lit < 0) s += "~";
    s += show(atoms[static_cast<size_t>(std::abs(lit) - 1)], sig);
  }
  return s;
}

std::vector<Clause> groundInstances(const ConstrainedClause& cc, const Signature& sig,
                                    int d, size_t cap) {
  std::vector<Clause> out;
  Constraint cons = cc.cons;
  if (cons.isBottom()) return out;
  std::vector<TermPtr> universe = groundTerms(sig, d, cap);
  std::set<int> vs = clauseVars(cc.cl);
  std::vector<int> order(vs.begin(), vs.end());
  double space = 1;
  for (size_t i = 0; i < order.size(); ++i) space *= static_cast<double>(universe.size());
  if (space > static_cast<double>(cap))
    throw OracleCapExceeded("ground expansion exceeds cap");
  std::vector<size_t> idx(order.size(), 0);
  for (;;) {
    Subst delta;
    for (size_t i = 0; i < order.size(); ++i) delta.bind(order[i], universe[idx[i]]);
    bool ok = true;
    for (const auto& c : cons.conjuncts()) {
      TermPtr l = delta(c.lhs);
      // constraints on variables outside the clause only affect solvability
      if (isGround(l) && isInstance(l, c.rhs)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      Clause inst = applyToClause(delta, cc.cl);
      bool within = true;
      for (const auto& a : inst.ante)
        for (const auto& t : a.args)
          if (depth(t) > d) within = false;
      for (const auto& a : inst.succ)
        for (const auto& t : a.args)
          if (depth(t) > d) within = false;
      if (within) out.push_back(std::move(inst));
    }
    if (order.empty()) break;
    int pos = static_cast<int>(order.size()) - 1;
    while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == universe.size()) {
      idx[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

GroundProblem expand(const std::vector<ConstrainedClause>& clauses, const Signature& sig,
                     int d, size_t cap) {
  GroundProblem g;
  g.depthBound = d;
  std::set<std::vector<int>> seen;
  for (const auto& cc : clauses) {
    if (!isSolvable(cc.cons, sig)) continue;
    for (const auto& inst : groundInstances(cc, sig, d, cap)) {
      std::vector<int> lits;
      bool tautology = false;
      for (const auto& a : inst.ante) lits.push_back(-g.intern(a));
      for (const auto& a : inst.succ) {
        int v = g.intern(a);
        if (std::find(lits.begin(), lits.end(), -v) != lits.end()) tautology = true;
        lits.push_back(v);
      }
      for (const auto& a : inst.ante)
        if (std::find(lits.begin(), lits.end(), g.intern(a)) != lits.end()) tautology = true;
      if (tautology) continue;
      std::sort(lits.begin(), lits.end());
      lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
      if (seen.insert(lits).second) {
        g.clauses.push_back(std::move(lits));
        if (g.clauses.size() > cap) throw OracleCapExceeded("ground clause count exceeds cap");
      }
    }
  }
  return g;
}

namespace {

bool dpllRec(const std::vector<std::vector<int>>& clauses, std::vector<int>& assign) {
  // unit propagation
  bool changed = true;
  std::vector<std::pair<size_t, int>> trail;
  while (changed) {
    changed = false;
    for (const auto& cl : clauses) {
      int unassigned = 0, lastLit = 0;
      bool sat = false;
      for (int lit : cl) {
        int v = assign[static_cast<size_t>(std::abs(lit))];
        if (v == 0) {
          ++unassigned;
          lastLit = lit;
        } else if ((lit > 0) == (v > 0)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (unassigned == 0) {
        for (auto& [var, old] : trail) assign[var] = old;
        return false; // conflict
      }
      if (unassigned == 1) {
        size_t var = static_cast<size_t>(std::abs(lastLit));
        trail.emplace_back(var, assign[var]);
        assign[var] = lastLit > 0 ? 1 : -1;
        changed = true;
      }
    }
  }
  size_t branch = 0;
  for (size_t v = 1; v < assign.size(); ++v)
    if (assign[v] == 0) {
      branch = v;
      break;
    }
  if (branch == 0) return true; // all assigned, no conflict
  for (int val : {1, -1}) {
    assign[branch] = val;
    if (dpllRec(clauses, assign)) return true;
  }
  assign[branch] = 0;
  for (auto& [var, old] : trail) assign[var] = old;
  return false;
}

} // namespace

GroundSat dpll(const GroundProblem& g) {
  GroundSat out;
  out.assignment.assign(g.atoms.size() + 1, 0);
  out.satisfiable = dpllRec(g.clauses, out.assignment);
  return out;
}

} // namespace msl
