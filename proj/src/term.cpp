#include "msl/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace msl {

TermPtr mkVar(int v) { return std::make_shared<Term>(Term{true, v, {}}); }

TermPtr mkFun(int f, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{false, f, std::move(args)});
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->isVar != b->isVar || a->sym != b->sym) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

int depth(const TermPtr& t) {
  if (t->args.empty()) return 0;
  int d = 0;
  for (const auto& a : t->args) d = std::max(d, depth(a));
  return d + 1;
}

int symbolCount(const TermPtr& t) {
  int n = 1;
  for (const auto& a : t->args) n += symbolCount(a);
  return n;
}

bool isGround(const TermPtr& t) {
  if (t->isVar) return false;
  for (const auto& a : t->args)
    if (!isGround(a)) return false;
  return true;
}

bool occurs(int var, const TermPtr& t) {
  if (t->isVar) return t->sym == var;
  for (const auto& a : t->args)
    if (occurs(var, a)) return true;
  return false;
}

void varsInto(const TermPtr& t, std::set<int>& out) {
  if (t->isVar) {
    out.insert(t->sym);
    return;
  }
  for (const auto& a : t->args) varsInto(a, out);
}

std::set<int> vars(const TermPtr& t) {
  std::set<int> out;
  varsInto(t, out);
  return out;
}

void varOccurrences(const TermPtr& t, std::vector<int>& out) {
  if (t->isVar) {
    out.push_back(t->sym);
    return;
  }
  for (const auto& a : t->args) varOccurrences(a, out);
}

bool isComplex(const TermPtr& t) { return !t->isVar; }

bool isShallow(const TermPtr& t) { return depth(t) <= 1; }

bool isLinear(const TermPtr& t) {
  std::vector<int> occ;
  varOccurrences(t, occ);
  std::sort(occ.begin(), occ.end());
  return std::adjacent_find(occ.begin(), occ.end()) == occ.end();
}

bool isStraight(const TermPtr& t) {
  if (t->isVar) return true;
  if (t->args.empty()) return true; // constant
  std::set<int> seen;
  int complexCount = 0;
  for (const auto& a : t->args) {
    if (a->isVar) {
      if (!seen.insert(a->sym).second) return false; // duplicate variable
    } else {
      if (++complexCount > 1) return false;
      if (!isStraight(a)) return false;
    }
  }
  // The straight argument must be variable disjoint from the rest; it has no
  // variables in common with sibling variables since it is itself straight
  // over fresh positions only when its vars don't reappear.
  if (complexCount == 1) {
    for (const auto& a : t->args) {
      if (!a->isVar) {
        auto vs = vars(a);
        for (int v : vs)
          if (seen.count(v)) return false;
      }
    }
  }
  return true;
}

TermPtr subtermAt(const TermPtr& t, const Pos& p, size_t from) {
  if (from == p.size()) return t;
  int i = p[from];
  if (t->isVar || i < 1 || static_cast<size_t>(i) > t->args.size())
    throw std::out_of_range("position not in term");
  return subtermAt(t->args[static_cast<size_t>(i - 1)], p, from + 1);
}

TermPtr replaceAt(const TermPtr& t, const Pos& p, const TermPtr& s, size_t from) {
  if (from == p.size()) return s;
  int i = p[from];
  if (t->isVar || i < 1 || static_cast<size_t>(i) > t->args.size())
    throw std::out_of_range("position not in term");
  std::vector<TermPtr> args = t->args;
  args[static_cast<size_t>(i - 1)] =
      replaceAt(t->args[static_cast<size_t>(i - 1)], p, s, from + 1);
  return mkFun(t->sym, std::move(args));
}

static void positionsInto(const TermPtr& t, Pos& cur, std::vector<Pos>& out) {
  out.push_back(cur);
  for (size_t i = 0; i < t->args.size(); ++i) {
    cur.push_back(static_cast<int>(i + 1));
    positionsInto(t->args[i], cur, out);
    cur.pop_back();
  }
}

std::vector<Pos> positions(const TermPtr& t) {
  std::vector<Pos> out;
  Pos cur;
  positionsInto(t, cur, out);
  return out;
}

int structuralCompare(const TermPtr& a, const TermPtr& b) {
  if (a->isVar != b->isVar) return a->isVar ? -1 : 1;
  if (a->sym != b->sym) return a->sym < b->sym ? -1 : 1;
  if (a->args.size() != b->args.size())
    return a->args.size() < b->args.size() ? -1 : 1;
  for (size_t i = 0; i < a->args.size(); ++i) {
    int c = structuralCompare(a->args[i], b->args[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string show(const TermPtr& t, const Signature& sig) {
  if (t->isVar) {
    const std::string& n = sig.varName(t->sym);
    // constraint-local rhs variables carry a reserved prefix
    return (!n.empty() && n[0] == '\x01') ? n.substr(1) : n;
  }
  std::string s = sig.func(t->sym).name;
  if (t->args.empty()) return s;
  s += "(";
  for (size_t i = 0; i < t->args.size(); ++i) {
    if (i) s += ",";
    s += show(t->args[i], sig);
  }
  s += ")";
  return s;
}

} // namespace msl
