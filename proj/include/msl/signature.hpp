#pragma once

#include <cassert>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace msl {

// Symbol table for one problem: function symbols, predicate symbols and
// variables. Functions and predicates live in separate id spaces but share a
// single total precedence (assigned in order of first occurrence; fresh
// symbols generated later are appended and never collide with existing
// names).
class Signature {
public:
  struct Func {
    std::string name;
    int arity;
    int prec;
  };
  struct Pred {
    std::string name;
    int arity;
    int prec;
  };

  int addFunc(const std::string& name, int arity);
  int addPred(const std::string& name, int arity);
  // Fresh symbols: `base` is decorated with a counter until the name is new.
  int freshFunc(const std::string& base, int arity);
  int freshPred(const std::string& base, int arity);

  std::optional<int> findFunc(const std::string& name) const;
  std::optional<int> findPred(const std::string& name) const;

  const Func& func(int id) const { return funcs_.at(static_cast<size_t>(id)); }
  const Pred& pred(int id) const { return preds_.at(static_cast<size_t>(id)); }
  int numFuncs() const { return static_cast<int>(funcs_.size()); }
  int numPreds() const { return static_cast<int>(preds_.size()); }

  bool hasConstant() const;
  std::vector<int> constants() const;
  // Adds a constant "c0" (or "c1", ... if taken) when the signature has none.
  int ensureConstant();

  // Copy without the function symbols of id >= n (approximation artifacts);
  // predicates and variables are kept.
  Signature truncatedFuncs(int n) const;

  // Variables. Ids are global to the problem; clauses are kept
  // variable-disjoint by renaming apart at use sites.
  int addVar(const std::string& name);
  int freshVar(const std::string& base = "X");
  const std::string& varName(int v) const { return vars_.at(static_cast<size_t>(v)); }
  int numVars() const { return static_cast<int>(vars_.size()); }

private:
  std::vector<Func> funcs_;
  std::vector<Pred> preds_;
  std::vector<std::string> vars_;
  std::map<std::string, int> funcByName_;
  std::map<std::string, int> predByName_;
  std::map<std::string, int> varByName_;
  int nextPrec_ = 0;
  int freshCounter_ = 0;
};

} // namespace msl
