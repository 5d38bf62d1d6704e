#pragma once

#include <optional>

#include "msl/subst.hpp"

namespace msl {

// Most general unifier with occurs check; result is idempotent.
std::optional<Subst> unifyTerms(const TermPtr& a, const TermPtr& b);
std::optional<Subst> unifyLists(const std::vector<TermPtr>& as, const std::vector<TermPtr>& bs);

// One-sided matching: extends `into` so that pattern*into == target; only
// variables of the pattern are bound.
bool matchTerm(const TermPtr& pattern, const TermPtr& target, Subst& into);
bool matchLists(const std::vector<TermPtr>& pats, const std::vector<TermPtr>& targets, Subst& into);

// target is an instance of pattern.
bool isInstance(const TermPtr& target, const TermPtr& pattern);

} // namespace msl
