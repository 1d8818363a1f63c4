#pragma once

#include <memory>
#include <string>

namespace nam {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class ConstTag { US = 0, OM = 1, AT = 2 };

enum class TermKind { Variable, Constant, Builder };

// Terms: variables, the three named constants, set-builder abstractions.
// Immutable once built; share freely.
struct Term {
  TermKind kind = TermKind::Variable;
  std::string name;             // Variable name, or the builder's bound variable
  ConstTag tag = ConstTag::US;  // Constant only
  FormulaPtr body;              // Builder only
};
using TermPtr = std::shared_ptr<const Term>;

enum class FormulaKind {
  Verum,
  Falsum,
  Member,
  Equal,
  NormalAtom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
};

struct Formula {
  FormulaKind kind = FormulaKind::Verum;
  TermPtr t1, t2;    // Member/Equal use both, NormalAtom uses t1
  FormulaPtr f1, f2; // Not and quantifiers use f1 only
  std::string var;   // Forall/Exists
};

TermPtr mk_var(std::string name);
TermPtr mk_const(ConstTag tag);
TermPtr mk_builder(std::string bound, FormulaPtr body);

FormulaPtr verum();
FormulaPtr falsum();
FormulaPtr member_of(TermPtr lhs, TermPtr rhs);
FormulaPtr equal_terms(TermPtr lhs, TermPtr rhs);
FormulaPtr normal_atom(TermPtr arg);
FormulaPtr neg(FormulaPtr f);
FormulaPtr conj(FormulaPtr l, FormulaPtr r);
FormulaPtr disj(FormulaPtr l, FormulaPtr r);
FormulaPtr implies(FormulaPtr l, FormulaPtr r);
FormulaPtr iff(FormulaPtr l, FormulaPtr r);
FormulaPtr forall(std::string v, FormulaPtr f);
FormulaPtr exists(std::string v, FormulaPtr f);

// Structural (syntactic) equality; bound-variable names matter.
bool ast_equal(const Term& a, const Term& b);
bool ast_equal(const Formula& a, const Formula& b);
inline bool ast_equal(const TermPtr& a, const TermPtr& b) { return ast_equal(*a, *b); }
inline bool ast_equal(const FormulaPtr& a, const FormulaPtr& b) { return ast_equal(*a, *b); }

// Nesting depth: atoms sit at 0, each connective/quantifier/builder adds one.
int depth(const Formula& f);
int depth(const Term& t);

// Canonical text. parse(to_text(f)) reproduces f exactly.
std::string to_text(const Formula& f);
std::string to_text(const Term& t);
const char* to_text(ConstTag tag);
inline std::string to_text(const FormulaPtr& f) { return to_text(*f); }
inline std::string to_text(const TermPtr& t) { return to_text(*t); }

}  // namespace nam
