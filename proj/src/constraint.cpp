#include "msl/constraint.hpp"

#include <algorithm>
#include <map>

#include "msl/signature.hpp"
#include "msl/unify.hpp"

namespace msl {

int atomicCompare(const AtomicConstraint& a, const AtomicConstraint& b) {
  int c = structuralCompare(a.lhs, b.lhs);
  if (c != 0) return c;
  return structuralCompare(a.rhs, b.rhs);
}

void Constraint::conjoin(const Constraint& other) {
  if (other.bot_) bot_ = true;
  if (bot_) {
    cons_.clear();
    return;
  }
  cons_.insert(cons_.end(), other.cons_.begin(), other.cons_.end());
}

int Constraint::depth() const {
  int d = 0;
  for (const auto& c : cons_) d = std::max(d, msl::depth(c.rhs));
  return d;
}

std::set<int> Constraint::lvars() const {
  std::set<int> out;
  for (const auto& c : cons_) varsInto(c.lhs, out);
  return out;
}

bool Constraint::operator==(const Constraint& o) const {
  if (bot_ != o.bot_) return false;
  if (cons_.size() != o.cons_.size()) return false;
  for (size_t i = 0; i < cons_.size(); ++i)
    if (atomicCompare(cons_[i], o.cons_[i]) != 0) return false;
  return true;
}

int constraintVar(Signature& sig, int index) {
  return sig.addVar("\x01R" + std::to_string(index));
}

bool isConstraintVar(const Signature& sig, int v) {
  const std::string& n = sig.varName(v);
  return !n.empty() && n[0] == '\x01';
}

static TermPtr renameRhs(const TermPtr& t, Signature& sig, int& next,
                         std::map<int, int>& seen) {
  if (t->isVar) {
    auto it = seen.find(t->sym);
    if (it == seen.end()) it = seen.emplace(t->sym, constraintVar(sig, next++)).first;
    return mkVar(it->second);
  }
  if (t->args.empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(renameRhs(a, sig, next, seen));
  return mkFun(t->sym, std::move(args));
}

AtomicConstraint canonicalizeRhs(const AtomicConstraint& c, Signature& sig) {
  int next = 0;
  std::map<int, int> seen;
  return AtomicConstraint{c.lhs, renameRhs(c.rhs, sig, next, seen)};
}

Constraint applyToConstraint(const Subst& sigma, const Constraint& pi) {
  if (pi.isBottom()) return pi;
  std::set<int> range = sigma.rangeVars();
  Constraint out;
  for (const auto& c : pi.conjuncts()) {
    for (int v : vars(c.rhs))
      if (range.count(v))
        throw std::logic_error("substitution range meets constraint rhs variables");
    out.add(AtomicConstraint{sigma(c.lhs), c.rhs});
  }
  return out;
}

namespace {

enum class Reduced { Keep, Drop, Bottom };

// Applies rules 1-4 to a single conjunct until its lhs is a variable, the
// conjunct is dropped, or the constraint collapses.
Reduced reduceConjunct(TermPtr& lhs, TermPtr& rhs) {
  for (;;) {
    if (rhs->isVar) return Reduced::Bottom; // every ground term matches a variable
    if (lhs->isVar) return Reduced::Keep;
    if (lhs->sym != rhs->sym) return Reduced::Drop; // head clash, trivially satisfied
    int complexIdx = -1;
    for (size_t i = 0; i < rhs->args.size(); ++i) {
      if (!rhs->args[i]->isVar) {
        complexIdx = static_cast<int>(i);
        break; // straightness: at most one complex argument
      }
    }
    if (complexIdx < 0) return Reduced::Bottom; // all-variable rhs covers every instance
    lhs = lhs->args[static_cast<size_t>(complexIdx)];
    rhs = rhs->args[static_cast<size_t>(complexIdx)];
  }
}

} // namespace

Constraint normalize(const Constraint& pi, Signature& sig) {
  if (pi.isBottom()) return Constraint::bottom();
  std::vector<AtomicConstraint> kept;
  for (const auto& c : pi.conjuncts()) {
    TermPtr lhs = c.lhs;
    TermPtr rhs = c.rhs;
    switch (reduceConjunct(lhs, rhs)) {
      case Reduced::Bottom:
        return Constraint::bottom();
      case Reduced::Drop:
        break;
      case Reduced::Keep:
        kept.push_back(canonicalizeRhs(AtomicConstraint{lhs, rhs}, sig));
        break;
    }
  }
  // Rule 5: on the same variable, drop any rhs that instantiates another rhs.
  std::vector<bool> dead(kept.size(), false);
  for (size_t i = 0; i < kept.size(); ++i) {
    if (dead[i]) continue;
    for (size_t j = 0; j < kept.size(); ++j) {
      if (i == j || dead[j]) continue;
      if (kept[i].lhs->sym != kept[j].lhs->sym) continue;
      Subst m;
      if (matchTerm(kept[i].rhs, kept[j].rhs, m)) {
        // rhs_j is an instance of rhs_i; prefer the lower index on ties.
        if (equal(kept[i].rhs, kept[j].rhs) && i > j) continue;
        dead[j] = true;
      }
    }
  }
  std::vector<AtomicConstraint> cs;
  for (size_t i = 0; i < kept.size(); ++i)
    if (!dead[i]) cs.push_back(kept[i]);
  std::sort(cs.begin(), cs.end(),
            [&](const AtomicConstraint& a, const AtomicConstraint& b) {
              return atomicCompare(a, b) < 0;
            });
  cs.erase(std::unique(cs.begin(), cs.end(),
                       [&](const AtomicConstraint& a, const AtomicConstraint& b) {
                         return atomicCompare(a, b) == 0;
                       }),
           cs.end());
  Constraint out;
  for (auto& c : cs) out.add(std::move(c));
  return out;
}

namespace {

// True iff every ground term over sig is an instance of some term in S.
// Members of S are straight; a straight term constrains at most one argument
// position per level, so coverage decomposes per root symbol and position.
bool coversAll(const std::vector<TermPtr>& S, const Signature& sig) {
  for (const auto& s : S)
    if (s->isVar) return true;
  for (int f = 0; f < sig.numFuncs(); ++f) {
    int arity = sig.func(f).arity;
    bool covered = false;
    std::map<int, std::vector<TermPtr>> byPos; // complex-argument position -> subterms
    for (const auto& s : S) {
      if (s->isVar || s->sym != f) continue;
      int complexIdx = -1;
      for (size_t i = 0; i < s->args.size(); ++i)
        if (!s->args[i]->isVar) complexIdx = static_cast<int>(i);
      if (complexIdx < 0) {
        covered = true; // f applied to distinct variables
        break;
      }
      byPos[complexIdx].push_back(s->args[static_cast<size_t>(complexIdx)]);
    }
    if (!covered) {
      for (int j = 0; j < arity && !covered; ++j) {
        auto it = byPos.find(j);
        if (it != byPos.end() && coversAll(it->second, sig)) covered = true;
      }
    }
    if (!covered) return false;
  }
  return true;
}

} // namespace

bool isSolvable(const Constraint& pi, const Signature& sig) {
  if (pi.isBottom()) return false;
  std::map<int, std::vector<TermPtr>> byVar;
  for (const auto& c : pi.conjuncts()) {
    // Normalized constraints have variable left-hand sides.
    if (!c.lhs->isVar) throw std::logic_error("isSolvable requires a normalized constraint");
    byVar[c.lhs->sym].push_back(c.rhs);
  }
  for (const auto& [v, terms] : byVar)
    if (coversAll(terms, sig)) return false;
  return true;
}

bool isSolution(const Subst& delta, const Constraint& pi) {
  if (pi.isBottom()) return false;
  for (const auto& c : pi.conjuncts()) {
    TermPtr inst = delta(c.lhs);
    if (!isGround(inst)) return false;
    if (isInstance(inst, c.rhs)) return false;
  }
  return true;
}

std::vector<TermPtr> groundTerms(const Signature& sig, int d, size_t cap) {
  std::vector<TermPtr> all;
  auto push = [&](std::vector<TermPtr>& level, TermPtr t) {
    if (all.size() + level.size() >= cap)
      throw OracleCapExceeded("ground term enumeration exceeds cap");
    level.push_back(std::move(t));
  };
  for (int k = 0; k <= d; ++k) {
    std::vector<TermPtr> level;
    for (int f = 0; f < sig.numFuncs(); ++f) {
      int arity = sig.func(f).arity;
      if (k == 0) {
        if (arity == 0) push(level, mkFun(f));
        continue;
      }
      if (arity == 0) continue;
      // argument tuples over depth <= k-1, at least one of depth exactly k-1
      std::vector<size_t> idx(static_cast<size_t>(arity), 0);
      size_t n = all.size();
      if (n == 0) continue;
      for (;;) {
        bool hasMax = false;
        for (size_t i : idx)
          if (depth(all[i]) == k - 1) hasMax = true;
        if (hasMax) {
          std::vector<TermPtr> args;
          args.reserve(static_cast<size_t>(arity));
          for (size_t i : idx) args.push_back(all[i]);
          push(level, mkFun(f, std::move(args)));
        }
        int pos = arity - 1;
        while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == n) {
          idx[static_cast<size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

std::vector<Subst> enumerateSolutions(const Constraint& pi, const Signature& sig, int d,
                                      size_t cap) {
  std::vector<Subst> out;
  if (pi.isBottom()) return out;
  std::set<int> lvarSet = pi.lvars();
  std::vector<int> vs(lvarSet.begin(), lvarSet.end());
  std::vector<TermPtr> universe = groundTerms(sig, d, cap);
  double space = 1;
  for (size_t i = 0; i < vs.size(); ++i) space *= static_cast<double>(universe.size());
  if (space > static_cast<double>(cap))
    throw OracleCapExceeded("solution candidate space exceeds cap");
  std::vector<size_t> idx(vs.size(), 0);
  if (vs.empty()) {
    out.push_back(Subst());
    return out;
  }
  for (;;) {
    Subst delta;
    for (size_t i = 0; i < vs.size(); ++i) delta.bind(vs[i], universe[idx[i]]);
    if (isSolution(delta, pi)) out.push_back(delta);
    int pos = static_cast<int>(vs.size()) - 1;
    while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == universe.size()) {
      idx[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

std::optional<Subst> minimalSolution(const Constraint& pi, const Signature& sig,
                                     const std::set<int>& domain) {
  if (pi.isBottom()) return std::nullopt;
  std::map<int, std::vector<TermPtr>> byVar;
  for (const auto& c : pi.conjuncts()) {
    if (!c.lhs->isVar) throw std::logic_error("minimalSolution requires a normalized constraint");
    byVar[c.lhs->sym].push_back(c.rhs);
  }
  // A witness below depth(pi)+1 exists for every uncovered variable.
  std::vector<TermPtr> universe = groundTerms(sig, pi.depth() + 1);
  Subst delta;
  for (int v : domain) {
    auto it = byVar.find(v);
    const TermPtr* found = nullptr;
    for (const auto& u : universe) {
      bool excluded = false;
      if (it != byVar.end())
        for (const auto& rhs : it->second)
          if (isInstance(u, rhs)) {
            excluded = true;
            break;
          }
      if (!excluded) {
        found = &u;
        break;
      }
    }
    if (!found) return std::nullopt;
    delta.bind(v, *found);
  }
  return delta;
}

std::string show(const Constraint& pi, const Signature& sig) {
  if (pi.isBottom()) return "false";
  if (pi.isTop()) return "true";
  std::string s;
  for (size_t i = 0; i < pi.conjuncts().size(); ++i) {
    if (i) s += ", ";
    s += show(pi.conjuncts()[i].lhs, sig) + " != " + show(pi.conjuncts()[i].rhs, sig);
  }
  return s;
}

} // namespace msl
