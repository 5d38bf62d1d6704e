#include "msl/unify.hpp"

#include <utility>
#include <vector>

namespace msl {

static bool unifyInto(std::vector<std::pair<TermPtr, TermPtr>> work, Subst& s) {
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    a = s(a);
    b = s(b);
    if (equal(a, b)) continue;
    if (a->isVar) {
      if (occurs(a->sym, b)) return false;
      s.composeBinding(a->sym, b);
      continue;
    }
    if (b->isVar) {
      if (occurs(b->sym, a)) return false;
      s.composeBinding(b->sym, a);
      continue;
    }
    if (a->sym != b->sym || a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
      work.emplace_back(a->args[i], b->args[i]);
  }
  return true;
}

std::optional<Subst> unifyTerms(const TermPtr& a, const TermPtr& b) {
  Subst s;
  if (!unifyInto({{a, b}}, s)) return std::nullopt;
  return s;
}

std::optional<Subst> unifyLists(const std::vector<TermPtr>& as, const std::vector<TermPtr>& bs) {
  if (as.size() != bs.size()) return std::nullopt;
  std::vector<std::pair<TermPtr, TermPtr>> work;
  for (size_t i = 0; i < as.size(); ++i) work.emplace_back(as[i], bs[i]);
  Subst s;
  if (!unifyInto(std::move(work), s)) return std::nullopt;
  return s;
}

bool matchTerm(const TermPtr& pattern, const TermPtr& target, Subst& into) {
  if (pattern->isVar) {
    if (const TermPtr* bound = into.lookup(pattern->sym)) return equal(*bound, target);
    into.bind(pattern->sym, target);
    return true;
  }
  if (target->isVar || pattern->sym != target->sym ||
      pattern->args.size() != target->args.size())
    return false;
  for (size_t i = 0; i < pattern->args.size(); ++i)
    if (!matchTerm(pattern->args[i], target->args[i], into)) return false;
  return true;
}

bool matchLists(const std::vector<TermPtr>& pats, const std::vector<TermPtr>& targets,
                Subst& into) {
  if (pats.size() != targets.size()) return false;
  for (size_t i = 0; i < pats.size(); ++i)
    if (!matchTerm(pats[i], targets[i], into)) return false;
  return true;
}

bool isInstance(const TermPtr& target, const TermPtr& pattern) {
  Subst s;
  return matchTerm(pattern, target, s);
}

} // namespace msl
