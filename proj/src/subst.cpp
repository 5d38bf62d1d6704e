#include "msl/subst.hpp"

namespace msl {

TermPtr Subst::operator()(const TermPtr& t) const {
  if (t->isVar) {
    auto it = map_.find(t->sym);
    return it == map_.end() ? t : it->second;
  }
  if (t->args.empty()) return t;
  bool changed = false;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) {
    TermPtr r = (*this)(a);
    changed = changed || r.get() != a.get();
    args.push_back(std::move(r));
  }
  if (!changed) return t;
  return mkFun(t->sym, std::move(args));
}

void Subst::composeBinding(int v, const TermPtr& t) {
  Subst single;
  single.bind(v, t);
  for (auto& [w, u] : map_) u = single(u);
  if (!map_.count(v)) map_[v] = t;
}

void Subst::compose(const Subst& other) {
  for (auto& [w, u] : map_) u = other(u);
  for (const auto& [v, t] : other.map_)
    if (!map_.count(v)) map_[v] = t;
}

std::set<int> Subst::rangeVars() const {
  std::set<int> out;
  for (const auto& [v, t] : map_) varsInto(t, out);
  return out;
}

Subst Subst::restrictedTo(const std::set<int>& dom) const {
  Subst out;
  for (const auto& [v, t] : map_)
    if (dom.count(v)) out.bind(v, t);
  return out;
}

} // namespace msl
