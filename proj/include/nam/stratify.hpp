#pragma once

#include "nam/ast.hpp"

namespace nam {

// Integer level assignment in the style of type-stratified comprehension:
// every variable-to-variable membership atom forces level(rhs) = level(lhs) + 1,
// equality atoms force equal levels, N(t) imposes nothing. A set-builder term
// is opaque: it occupies one level above its bound variable. Constants are
// unconstrained. True iff a consistent assignment exists.
bool stratified(const Formula& f);
inline bool stratified(const FormulaPtr& f) { return stratified(*f); }

}  // namespace nam
