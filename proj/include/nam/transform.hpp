#pragma once

#include <set>
#include <string>

#include "nam/ast.hpp"

namespace nam {

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> free_vars(const Term& t);
inline std::set<std::string> free_vars(const FormulaPtr& f) { return free_vars(*f); }
inline std::set<std::string> free_vars(const TermPtr& t) { return free_vars(*t); }

// Capture-avoiding substitution; binders are renamed when the payload mentions them.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& payload);
TermPtr substitute(const TermPtr& t, const std::string& var, const TermPtr& payload);

// Renames bound variables to a canonical scheme (a, b, c, ... skipping free names).
// Idempotent; afterwards bound names are unique and disjoint from free names.
FormulaPtr alpha_normalize(const FormulaPtr& f);

// Flip every membership atom through negation, collapsing double negations.
// An involution; preserves free variables.
FormulaPtr supplement(const FormulaPtr& f);

// Swap And/Or and Forall/Exists everywhere (builder bodies included).
// An involution; preserves free variables and depth.
FormulaPtr dualize(const FormulaPtr& f);

}  // namespace nam
