#include "nam/family.hpp"

#include <algorithm>

#include "nam/errors.hpp"

namespace nam {

namespace {

const char* kVarSeq[] = {"x", "y", "z", "w", "v", "u"};

std::string next_binder(const std::vector<std::string>& used) {
  for (const char* c : kVarSeq)
    if (std::find(used.begin(), used.end(), c) == used.end()) return c;
  // Depth caps keep us inside the sequence; spill deterministically anyway.
  return "b" + std::to_string(used.size());
}

std::vector<FormulaPtr> atom_layer(const std::vector<std::string>& vars, bool allowConstants) {
  std::vector<TermPtr> terms;
  for (const auto& v : vars) terms.push_back(mk_var(v));
  if (allowConstants) {
    terms.push_back(mk_const(ConstTag::US));
    terms.push_back(mk_const(ConstTag::OM));
    terms.push_back(mk_const(ConstTag::AT));
  }
  std::vector<FormulaPtr> out;
  out.push_back(verum());
  out.push_back(falsum());
  for (const auto& a : terms)
    for (const auto& b : terms) out.push_back(member_of(a, b));
  for (const auto& a : terms)
    for (const auto& b : terms) out.push_back(equal_terms(a, b));
  for (const auto& a : terms) out.push_back(normal_atom(a));
  return out;
}

}  // namespace

std::vector<FormulaPtr> enumerate_formulas(int depth, const std::vector<std::string>& freeVars,
                                           bool allowConstants) {
  // With constants the depth-1 layer already has thousands of members, so the
  // quadratic step to depth 2 would need tens of millions of nodes.
  if (depth >= 2 && allowConstants)
    throw CapError("family depth " + std::to_string(depth) +
                   " with constants exceeds the tractable size");
  std::vector<FormulaPtr> layer = atom_layer(freeVars, allowConstants);
  if (depth == 0) return layer;

  std::string binder = next_binder(freeVars);
  std::vector<std::string> inner = freeVars;
  inner.push_back(binder);

  for (int d = 1; d <= depth; ++d) {
    std::vector<FormulaPtr> prev = layer;
    std::vector<FormulaPtr> bodies = enumerate_formulas(d - 1, inner, allowConstants);

    std::vector<FormulaPtr> next = atom_layer(freeVars, allowConstants);
    for (const auto& f : prev)
      if (f->kind != FormulaKind::Not) next.push_back(neg(f));
    for (size_t i = 0; i < prev.size(); ++i)
      for (size_t j = i; j < prev.size(); ++j) next.push_back(conj(prev[i], prev[j]));
    for (size_t i = 0; i < prev.size(); ++i)
      for (size_t j = i; j < prev.size(); ++j) next.push_back(disj(prev[i], prev[j]));
    for (const auto& l : prev)
      for (const auto& r : prev) next.push_back(implies(l, r));
    for (const auto& l : prev)
      for (const auto& r : prev) next.push_back(iff(l, r));
    for (const auto& b : bodies) next.push_back(forall(binder, b));
    for (const auto& b : bodies) next.push_back(exists(binder, b));

    layer = std::move(next);
  }
  return layer;
}

FormulaFamily enumerate_family(int depth, bool allowConstants) {
  if (depth < 0 || depth > kMaxFamilyDepth)
    throw CapError("family depth " + std::to_string(depth) + " exceeds cap " +
                   std::to_string(kMaxFamilyDepth));
  FormulaFamily fam;
  fam.depth = depth;
  fam.allowConstants = allowConstants;
  fam.variables.push_back("x");
  for (int lvl = 0; lvl < depth; ++lvl) fam.variables.push_back(next_binder(fam.variables));
  fam.members = enumerate_formulas(depth, {"x"}, allowConstants);
  return fam;
}

}  // namespace nam
