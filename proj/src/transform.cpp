#include "nam/transform.hpp"

#include <map>
#include <vector>

namespace nam {

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out);

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind) {
    case TermKind::Variable:
      if (!bound.count(t.name)) out.insert(t.name);
      break;
    case TermKind::Constant:
      break;
    case TermKind::Builder: {
      bool added = bound.insert(t.name).second;
      collect_free(*t.body, bound, out);
      if (added) bound.erase(t.name);
      break;
    }
  }
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind) {
    case FormulaKind::Verum:
    case FormulaKind::Falsum:
      break;
    case FormulaKind::Member:
    case FormulaKind::Equal:
      collect_free(*f.t1, bound, out);
      collect_free(*f.t2, bound, out);
      break;
    case FormulaKind::NormalAtom:
      collect_free(*f.t1, bound, out);
      break;
    case FormulaKind::Not:
      collect_free(*f.f1, bound, out);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      collect_free(*f.f1, bound, out);
      collect_free(*f.f2, bound, out);
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool added = bound.insert(f.var).second;
      collect_free(*f.f1, bound, out);
      if (added) bound.erase(f.var);
      break;
    }
  }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

TermPtr substitute(const TermPtr& t, const std::string& var, const TermPtr& payload) {
  switch (t->kind) {
    case TermKind::Variable:
      return t->name == var ? payload : t;
    case TermKind::Constant:
      return t;
    case TermKind::Builder: {
      if (t->name == var) return t;  // binder shadows
      auto captured = free_vars(*payload);
      if (captured.count(t->name)) {
        auto taken = captured;
        auto bodyFree = free_vars(*t->body);
        taken.insert(bodyFree.begin(), bodyFree.end());
        taken.insert(var);
        std::string nv = fresh_name(t->name, taken);
        auto renamed = substitute(t->body, t->name, mk_var(nv));
        return mk_builder(nv, substitute(renamed, var, payload));
      }
      return mk_builder(t->name, substitute(t->body, var, payload));
    }
  }
  return t;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& payload) {
  switch (f->kind) {
    case FormulaKind::Verum:
    case FormulaKind::Falsum:
      return f;
    case FormulaKind::Member:
      return member_of(substitute(f->t1, var, payload), substitute(f->t2, var, payload));
    case FormulaKind::Equal:
      return equal_terms(substitute(f->t1, var, payload), substitute(f->t2, var, payload));
    case FormulaKind::NormalAtom:
      return normal_atom(substitute(f->t1, var, payload));
    case FormulaKind::Not:
      return neg(substitute(f->f1, var, payload));
    case FormulaKind::And:
      return conj(substitute(f->f1, var, payload), substitute(f->f2, var, payload));
    case FormulaKind::Or:
      return disj(substitute(f->f1, var, payload), substitute(f->f2, var, payload));
    case FormulaKind::Implies:
      return implies(substitute(f->f1, var, payload), substitute(f->f2, var, payload));
    case FormulaKind::Iff:
      return iff(substitute(f->f1, var, payload), substitute(f->f2, var, payload));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (f->var == var) return f;
      auto rebuild = [&](const std::string& v, FormulaPtr body) {
        return f->kind == FormulaKind::Forall ? forall(v, std::move(body)) : exists(v, std::move(body));
      };
      auto captured = free_vars(*payload);
      if (captured.count(f->var)) {
        auto taken = captured;
        auto bodyFree = free_vars(*f->f1);
        taken.insert(bodyFree.begin(), bodyFree.end());
        taken.insert(var);
        std::string nv = fresh_name(f->var, taken);
        auto renamed = substitute(f->f1, f->var, mk_var(nv));
        return rebuild(nv, substitute(renamed, var, payload));
      }
      return rebuild(f->var, substitute(f->f1, var, payload));
    }
  }
  return f;
}

namespace {

// Canonical bound-name sequence: a, b, ..., z, a1, b1, ... with free names skipped.
class Renamer {
 public:
  explicit Renamer(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}

  std::string next() {
    while (true) {
      int round = counter_ / 26;
      char letter = static_cast<char>('a' + counter_ % 26);
      ++counter_;
      std::string name(1, letter);
      if (round > 0) name += std::to_string(round);
      if (!avoid_.count(name)) return name;
    }
  }

 private:
  std::set<std::string> avoid_;
  int counter_ = 0;
};

using Env = std::vector<std::pair<std::string, std::string>>;

const std::string* env_lookup(const Env& env, const std::string& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

TermPtr rename_term(const TermPtr& t, Env& env, Renamer& ren);

FormulaPtr rename_formula(const FormulaPtr& f, Env& env, Renamer& ren) {
  switch (f->kind) {
    case FormulaKind::Verum:
    case FormulaKind::Falsum:
      return f;
    case FormulaKind::Member:
      return member_of(rename_term(f->t1, env, ren), rename_term(f->t2, env, ren));
    case FormulaKind::Equal:
      return equal_terms(rename_term(f->t1, env, ren), rename_term(f->t2, env, ren));
    case FormulaKind::NormalAtom:
      return normal_atom(rename_term(f->t1, env, ren));
    case FormulaKind::Not:
      return neg(rename_formula(f->f1, env, ren));
    case FormulaKind::And:
      return conj(rename_formula(f->f1, env, ren), rename_formula(f->f2, env, ren));
    case FormulaKind::Or:
      return disj(rename_formula(f->f1, env, ren), rename_formula(f->f2, env, ren));
    case FormulaKind::Implies:
      return implies(rename_formula(f->f1, env, ren), rename_formula(f->f2, env, ren));
    case FormulaKind::Iff:
      return iff(rename_formula(f->f1, env, ren), rename_formula(f->f2, env, ren));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::string nv = ren.next();
      env.emplace_back(f->var, nv);
      auto body = rename_formula(f->f1, env, ren);
      env.pop_back();
      return f->kind == FormulaKind::Forall ? forall(nv, body) : exists(nv, body);
    }
  }
  return f;
}

TermPtr rename_term(const TermPtr& t, Env& env, Renamer& ren) {
  switch (t->kind) {
    case TermKind::Variable: {
      const std::string* mapped = env_lookup(env, t->name);
      return mapped ? mk_var(*mapped) : t;
    }
    case TermKind::Constant:
      return t;
    case TermKind::Builder: {
      std::string nv = ren.next();
      env.emplace_back(t->name, nv);
      auto body = rename_formula(t->body, env, ren);
      env.pop_back();
      return mk_builder(nv, body);
    }
  }
  return t;
}

}  // namespace

FormulaPtr alpha_normalize(const FormulaPtr& f) {
  Renamer ren(free_vars(*f));
  Env env;
  return rename_formula(f, env, ren);
}

namespace {

TermPtr supp_term(const TermPtr& t);

FormulaPtr supp(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Verum:
    case FormulaKind::Falsum:
      return f;
    case FormulaKind::Member:
      return neg(member_of(supp_term(f->t1), supp_term(f->t2)));
    case FormulaKind::Equal:
      return equal_terms(supp_term(f->t1), supp_term(f->t2));
    case FormulaKind::NormalAtom:
      return normal_atom(supp_term(f->t1));
    case FormulaKind::Not:
      // ~(a in b) flips back to a bare atom; other negations stay.
      if (f->f1->kind == FormulaKind::Member)
        return member_of(supp_term(f->f1->t1), supp_term(f->f1->t2));
      return neg(supp(f->f1));
    case FormulaKind::And:
      return conj(supp(f->f1), supp(f->f2));
    case FormulaKind::Or:
      return disj(supp(f->f1), supp(f->f2));
    case FormulaKind::Implies:
      return implies(supp(f->f1), supp(f->f2));
    case FormulaKind::Iff:
      return iff(supp(f->f1), supp(f->f2));
    case FormulaKind::Forall:
      return forall(f->var, supp(f->f1));
    case FormulaKind::Exists:
      return exists(f->var, supp(f->f1));
  }
  return f;
}

TermPtr supp_term(const TermPtr& t) {
  if (t->kind == TermKind::Builder) return mk_builder(t->name, supp(t->body));
  return t;
}

TermPtr dual_term(const TermPtr& t);

FormulaPtr dual(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Verum:
    case FormulaKind::Falsum:
      return f;
    case FormulaKind::Member:
      return member_of(dual_term(f->t1), dual_term(f->t2));
    case FormulaKind::Equal:
      return equal_terms(dual_term(f->t1), dual_term(f->t2));
    case FormulaKind::NormalAtom:
      return normal_atom(dual_term(f->t1));
    case FormulaKind::Not:
      return neg(dual(f->f1));
    case FormulaKind::And:
      return disj(dual(f->f1), dual(f->f2));
    case FormulaKind::Or:
      return conj(dual(f->f1), dual(f->f2));
    case FormulaKind::Implies:
      return implies(dual(f->f1), dual(f->f2));
    case FormulaKind::Iff:
      return iff(dual(f->f1), dual(f->f2));
    case FormulaKind::Forall:
      return exists(f->var, dual(f->f1));
    case FormulaKind::Exists:
      return forall(f->var, dual(f->f1));
  }
  return f;
}

TermPtr dual_term(const TermPtr& t) {
  if (t->kind == TermKind::Builder) return mk_builder(t->name, dual(t->body));
  return t;
}

}  // namespace

FormulaPtr supplement(const FormulaPtr& f) { return supp(f); }
FormulaPtr dualize(const FormulaPtr& f) { return dual(f); }

}  // namespace nam
