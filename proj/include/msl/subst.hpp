#pragma once

#include <map>

#include "msl/term.hpp"

namespace msl {

// Finite mapping from variables to terms.
class Subst {
public:
  Subst() = default;

  bool empty() const { return map_.empty(); }
  size_t size() const { return map_.size(); }
  bool binds(int v) const { return map_.count(v) != 0; }
  const TermPtr* lookup(int v) const {
    auto it = map_.find(v);
    return it == map_.end() ? nullptr : &it->second;
  }
  void bind(int v, TermPtr t) { map_[v] = std::move(t); }

  TermPtr operator()(const TermPtr& t) const;

  // this := {v -> t} composed after this: ranges are rewritten, then the new
  // binding added. Keeps mgu results idempotent.
  void composeBinding(int v, const TermPtr& t);
  // this := other after this.
  void compose(const Subst& other);

  std::set<int> rangeVars() const;
  const std::map<int, TermPtr>& entries() const { return map_; }

  Subst restrictedTo(const std::set<int>& dom) const;

private:
  std::map<int, TermPtr> map_;
};

} // namespace msl
