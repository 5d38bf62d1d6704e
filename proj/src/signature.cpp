#include "msl/signature.hpp"

#include <stdexcept>

namespace msl {

int Signature::addFunc(const std::string& name, int arity) {
  auto it = funcByName_.find(name);
  if (it != funcByName_.end()) {
    if (funcs_[static_cast<size_t>(it->second)].arity != arity)
      throw std::runtime_error("arity mismatch for function '" + name + "'");
    return it->second;
  }
  if (predByName_.count(name))
    throw std::runtime_error("symbol '" + name + "' used both as predicate and function");
  int id = static_cast<int>(funcs_.size());
  funcs_.push_back(Func{name, arity, nextPrec_++});
  funcByName_[name] = id;
  return id;
}

int Signature::addPred(const std::string& name, int arity) {
  auto it = predByName_.find(name);
  if (it != predByName_.end()) {
    if (preds_[static_cast<size_t>(it->second)].arity != arity)
      throw std::runtime_error("arity mismatch for predicate '" + name + "'");
    return it->second;
  }
  if (funcByName_.count(name))
    throw std::runtime_error("symbol '" + name + "' used both as function and predicate");
  int id = static_cast<int>(preds_.size());
  preds_.push_back(Pred{name, arity, nextPrec_++});
  predByName_[name] = id;
  return id;
}

int Signature::freshFunc(const std::string& base, int arity) {
  std::string name = base;
  while (funcByName_.count(name) || predByName_.count(name))
    name = base + std::to_string(freshCounter_++);
  return addFunc(name, arity);
}

int Signature::freshPred(const std::string& base, int arity) {
  std::string name = base;
  while (funcByName_.count(name) || predByName_.count(name))
    name = base + std::to_string(freshCounter_++);
  return addPred(name, arity);
}

std::optional<int> Signature::findFunc(const std::string& name) const {
  auto it = funcByName_.find(name);
  if (it == funcByName_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Signature::findPred(const std::string& name) const {
  auto it = predByName_.find(name);
  if (it == predByName_.end()) return std::nullopt;
  return it->second;
}

bool Signature::hasConstant() const {
  for (const auto& f : funcs_)
    if (f.arity == 0) return true;
  return false;
}

std::vector<int> Signature::constants() const {
  std::vector<int> out;
  for (size_t i = 0; i < funcs_.size(); ++i)
    if (funcs_[i].arity == 0) out.push_back(static_cast<int>(i));
  return out;
}

int Signature::ensureConstant() {
  for (size_t i = 0; i < funcs_.size(); ++i)
    if (funcs_[i].arity == 0) return static_cast<int>(i);
  return freshFunc("c0", 0);
}

Signature Signature::truncatedFuncs(int n) const {
  Signature out = *this;
  if (n < 0 || static_cast<size_t>(n) >= funcs_.size()) return out;
  for (size_t i = static_cast<size_t>(n); i < out.funcs_.size(); ++i)
    out.funcByName_.erase(out.funcs_[i].name);
  out.funcs_.resize(static_cast<size_t>(n));
  return out;
}

int Signature::addVar(const std::string& name) {
  auto it = varByName_.find(name);
  if (it != varByName_.end()) return it->second;
  int id = static_cast<int>(vars_.size());
  vars_.push_back(name);
  varByName_[name] = id;
  return id;
}

int Signature::freshVar(const std::string& base) {
  std::string name = base;
  while (varByName_.count(name))
    name = base + std::to_string(freshCounter_++);
  return addVar(name);
}

} // namespace msl
