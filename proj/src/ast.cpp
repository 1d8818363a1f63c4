#include "nam/ast.hpp"

#include <algorithm>
#include <utility>

namespace nam {

TermPtr mk_var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Variable;
  t->name = std::move(name);
  return t;
}

TermPtr mk_const(ConstTag tag) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Constant;
  t->tag = tag;
  return t;
}

TermPtr mk_builder(std::string bound, FormulaPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Builder;
  t->name = std::move(bound);
  t->body = std::move(body);
  return t;
}

namespace {

FormulaPtr mk_atom0(FormulaKind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

FormulaPtr mk_term2(FormulaKind k, TermPtr a, TermPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->t1 = std::move(a);
  f->t2 = std::move(b);
  return f;
}

FormulaPtr mk_bin(FormulaKind k, FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->f1 = std::move(l);
  f->f2 = std::move(r);
  return f;
}

}  // namespace

FormulaPtr verum() { return mk_atom0(FormulaKind::Verum); }
FormulaPtr falsum() { return mk_atom0(FormulaKind::Falsum); }

FormulaPtr member_of(TermPtr lhs, TermPtr rhs) {
  return mk_term2(FormulaKind::Member, std::move(lhs), std::move(rhs));
}

FormulaPtr equal_terms(TermPtr lhs, TermPtr rhs) {
  return mk_term2(FormulaKind::Equal, std::move(lhs), std::move(rhs));
}

FormulaPtr normal_atom(TermPtr arg) {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::NormalAtom;
  f->t1 = std::move(arg);
  return f;
}

FormulaPtr neg(FormulaPtr f) {
  auto r = std::make_shared<Formula>();
  r->kind = FormulaKind::Not;
  r->f1 = std::move(f);
  return r;
}

FormulaPtr conj(FormulaPtr l, FormulaPtr r) { return mk_bin(FormulaKind::And, std::move(l), std::move(r)); }
FormulaPtr disj(FormulaPtr l, FormulaPtr r) { return mk_bin(FormulaKind::Or, std::move(l), std::move(r)); }
FormulaPtr implies(FormulaPtr l, FormulaPtr r) { return mk_bin(FormulaKind::Implies, std::move(l), std::move(r)); }
FormulaPtr iff(FormulaPtr l, FormulaPtr r) { return mk_bin(FormulaKind::Iff, std::move(l), std::move(r)); }

FormulaPtr forall(std::string v, FormulaPtr f) {
  auto r = std::make_shared<Formula>();
  r->kind = FormulaKind::Forall;
  r->var = std::move(v);
  r->f1 = std::move(f);
  return r;
}

FormulaPtr exists(std::string v, FormulaPtr f) {
  auto r = std::make_shared<Formula>();
  r->kind = FormulaKind::Exists;
  r->var = std::move(v);
  r->f1 = std::move(f);
  return r;
}

bool ast_equal(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TermKind::Variable: return a.name == b.name;
    case TermKind::Constant: return a.tag == b.tag;
    case TermKind::Builder: return a.name == b.name && ast_equal(*a.body, *b.body);
  }
  return false;
}

bool ast_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case FormulaKind::Verum:
    case FormulaKind::Falsum:
      return true;
    case FormulaKind::Member:
    case FormulaKind::Equal:
      return ast_equal(*a.t1, *b.t1) && ast_equal(*a.t2, *b.t2);
    case FormulaKind::NormalAtom:
      return ast_equal(*a.t1, *b.t1);
    case FormulaKind::Not:
      return ast_equal(*a.f1, *b.f1);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return ast_equal(*a.f1, *b.f1) && ast_equal(*a.f2, *b.f2);
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return a.var == b.var && ast_equal(*a.f1, *b.f1);
  }
  return false;
}

int depth(const Term& t) {
  return t.kind == TermKind::Builder ? 1 + depth(*t.body) : 0;
}

int depth(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Verum:
    case FormulaKind::Falsum:
      return 0;
    case FormulaKind::Member:
    case FormulaKind::Equal:
      return std::max(depth(*f.t1), depth(*f.t2));
    case FormulaKind::NormalAtom:
      return depth(*f.t1);
    case FormulaKind::Not:
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return 1 + depth(*f.f1);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      return 1 + std::max(depth(*f.f1), depth(*f.f2));
  }
  return 0;
}

const char* to_text(ConstTag tag) {
  switch (tag) {
    case ConstTag::US: return "US";
    case ConstTag::OM: return "OM";
    case ConstTag::AT: return "AT";
  }
  return "US";
}

std::string to_text(const Term& t) {
  switch (t.kind) {
    case TermKind::Variable: return t.name;
    case TermKind::Constant: return to_text(t.tag);
    case TermKind::Builder: return "{" + t.name + " | " + to_text(*t.body) + "}";
  }
  return "";
}

std::string to_text(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Verum: return "T";
    case FormulaKind::Falsum: return "F";
    case FormulaKind::Member: return "(" + to_text(*f.t1) + " in " + to_text(*f.t2) + ")";
    case FormulaKind::Equal: return "(" + to_text(*f.t1) + " = " + to_text(*f.t2) + ")";
    case FormulaKind::NormalAtom: return "N(" + to_text(*f.t1) + ")";
    case FormulaKind::Not: return "~" + to_text(*f.f1);
    case FormulaKind::And: return "(" + to_text(*f.f1) + " & " + to_text(*f.f2) + ")";
    case FormulaKind::Or: return "(" + to_text(*f.f1) + " | " + to_text(*f.f2) + ")";
    case FormulaKind::Implies: return "(" + to_text(*f.f1) + " -> " + to_text(*f.f2) + ")";
    case FormulaKind::Iff: return "(" + to_text(*f.f1) + " <-> " + to_text(*f.f2) + ")";
    case FormulaKind::Forall: return "A " + f.var + ". " + to_text(*f.f1);
    case FormulaKind::Exists: return "E " + f.var + ". " + to_text(*f.f1);
  }
  return "";
}

}  // namespace nam
