#pragma once

#include <string>
#include <vector>

#include "nam/ast.hpp"

namespace nam {

inline constexpr int kMaxFamilyDepth = 2;

struct FormulaFamily {
  int depth = 0;
  bool allowConstants = false;
  std::vector<std::string> variables;  // designated free variable first, then binder names per nesting level
  std::vector<FormulaPtr> members;     // free variables of each member lie within {variables[0]}
};

// All formulas over the designated variable "x" up to the depth bound,
// modulo And/Or commutativity and double negation; deterministic order.
// Depth is capped at kMaxFamilyDepth.
FormulaFamily enumerate_family(int depth, bool allowConstants);

// Building block: all formulas (same reductions) whose free variables lie
// within freeVars. Quantifiers introduce canonical binder names.
std::vector<FormulaPtr> enumerate_formulas(int depth, const std::vector<std::string>& freeVars,
                                           bool allowConstants);

}  // namespace nam
