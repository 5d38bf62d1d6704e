#include "msl/selection.hpp"

#include <stdexcept>

namespace msl {

std::vector<int> select(const Clause& c) {
  std::vector<int> out;
  bool allVars = true;
  std::set<int> succVars;
  for (const auto& a : c.succ)
    for (const auto& t : a.args) varsInto(t, succVars);
  for (const auto& a : c.ante) {
    if (a.args.size() != 1) throw std::logic_error("select requires monadic antecedents");
    if (!a.args[0]->isVar) allVars = false;
  }
  bool allInSucc = allVars;
  if (allVars)
    for (const auto& a : c.ante)
      if (!succVars.count(a.args[0]->sym)) allInSucc = false;
  for (size_t i = 0; i < c.ante.size(); ++i) {
    const TermPtr& t = c.ante[i].args[0];
    if (!t->isVar) {
      out.push_back(static_cast<int>(i)); // (1)
      continue;
    }
    if (allVars && !succVars.count(t->sym)) {
      out.push_back(static_cast<int>(i)); // (2)
      continue;
    }
    if (allInSucc) {
      for (const auto& s : c.succ) {
        bool hit = false;
        for (const auto& u : s.args)
          if (u->isVar && u->sym == t->sym) hit = true;
        if (hit) {
          out.push_back(static_cast<int>(i)); // (3)
          break;
        }
      }
    }
  }
  return out;
}

} // namespace msl
