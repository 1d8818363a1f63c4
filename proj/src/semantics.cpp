#include "nam/semantics.hpp"

#include <memory>

#include "nam/parse.hpp"
#include "nam/transform.hpp"

namespace nam {

namespace {

const char* code_name(SemErrorCode c) {
  switch (c) {
    case SemErrorCode::UndesignatedConstant: return "UNDESIGNATED_CONSTANT";
    case SemErrorCode::UnknownDenotation: return "UNKNOWN_DENOTATION";
    case SemErrorCode::ParametricBuilder: return "PARAMETRIC_BUILDER";
    case SemErrorCode::UnboundVariable: return "UNBOUND_VARIABLE";
  }
  return "?";
}

std::string canonical_builder_key(const Term& t) {
  auto tp = std::make_shared<const Term>(t);
  auto norm = alpha_normalize(equal_terms(tp, tp));
  return to_text(*norm->t1);
}

int denote_impl(const Structure& s, const Term& t, const Assignment& env) {
  switch (t.kind) {
    case TermKind::Variable: {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t.name) return it->second;
      throw SemanticsError(SemErrorCode::UnboundVariable, t.name,
                           "variable '" + t.name + "' has no assignment");
    }
    case TermKind::Constant: {
      if (auto d = s.designation(t.tag)) return *d;
      throw SemanticsError(SemErrorCode::UndesignatedConstant, to_text(t),
                           "constant " + to_text(t) + " is not designated");
    }
    case TermKind::Builder: {
      if (!free_vars(t).empty())
        throw SemanticsError(SemErrorCode::ParametricBuilder, to_text(t),
                             "set builder " + to_text(t) + " has free variables");
      std::string key = to_text(t);
      auto it = s.denotations.find(key);
      if (it != s.denotations.end()) return it->second;
      // the table may hold an alpha-variant of the same builder
      std::string norm = canonical_builder_key(t);
      for (const auto& [stored, elem] : s.denotations) {
        try {
          if (canonical_builder_key(*parse_term(stored)) == norm) return elem;
        } catch (const ParseError&) {
        }
      }
      throw SemanticsError(SemErrorCode::UnknownDenotation, key,
                           "set builder " + key + " has no denotation");
    }
  }
  throw SemanticsError(SemErrorCode::UnknownDenotation, to_text(t), "unreachable term kind");
}

struct Evaluator {
  const Structure& s;
  Philosophy phil;
  Assignment env;

  int den(const Term& t) { return denote_impl(s, t, env); }

  bool go(const Formula& f) {
    switch (f.kind) {
      case FormulaKind::Verum: return true;
      case FormulaKind::Falsum: return false;
      case FormulaKind::Member: {
        int a = den(*f.t1);
        int b = den(*f.t2);
        return s.member(a, b);
      }
      case FormulaKind::Equal: {
        int a = den(*f.t1);
        int b = den(*f.t2);
        if (phil == Philosophy::A) return a == b;
        return s.ext[static_cast<size_t>(a)] == s.ext[static_cast<size_t>(b)] &&
               s.is_normal(a) == s.is_normal(b);
      }
      case FormulaKind::NormalAtom: return s.is_normal(den(*f.t1));
      case FormulaKind::Not: return !go(*f.f1);
      case FormulaKind::And: return go(*f.f1) && go(*f.f2);
      case FormulaKind::Or: return go(*f.f1) || go(*f.f2);
      case FormulaKind::Implies: return !go(*f.f1) || go(*f.f2);
      case FormulaKind::Iff: return go(*f.f1) == go(*f.f2);
      case FormulaKind::Forall: {
        for (int e = 0; e < s.n; ++e) {
          env.emplace_back(f.var, e);
          bool ok = go(*f.f1);
          env.pop_back();
          if (!ok) return false;
        }
        return true;
      }
      case FormulaKind::Exists: {
        for (int e = 0; e < s.n; ++e) {
          env.emplace_back(f.var, e);
          bool ok = go(*f.f1);
          env.pop_back();
          if (ok) return true;
        }
        return false;
      }
    }
    return false;
  }
};

ElemSet down_closure(const Structure& s, ElemSet seed) {
  ElemSet acc = seed;
  while (true) {
    ElemSet next = acc;
    for (ElemSet work = acc; work;) {
      int m = __builtin_ctz(work);
      work &= work - 1;
      next |= s.ext[static_cast<size_t>(m)];
    }
    if (next == acc) return acc;
    acc = next;
  }
}

ElemSet up_closure(const Structure& s, ElemSet seed) {
  ElemSet acc = seed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int y = 0; y < s.n; ++y) {
      if ((acc >> y) & 1) continue;
      if (s.ext[static_cast<size_t>(y)] & acc) {  // some element of acc is a member of y
        acc |= ElemSet{1} << y;
        changed = true;
      }
    }
  }
  return acc;
}

// elements that can reach themselves by a descending membership path
ElemSet cyclic_elements(const Structure& s) {
  ElemSet cyc = 0;
  for (int e = 0; e < s.n; ++e)
    if ((down_closure(s, s.ext[static_cast<size_t>(e)]) >> e) & 1) cyc |= ElemSet{1} << e;
  return cyc;
}

bool founded_at(const Structure& s, int e, const SemOptions& opt) {
  ElemSet x = ext(s, e);
  if (x == 0) return !opt.strictFounded;
  for (ElemSet work = x; work;) {
    int y = __builtin_ctz(work);
    work &= work - 1;
    if ((ext(s, y) & x) == 0) return true;
  }
  return false;
}

}  // namespace

SemanticsError::SemanticsError(SemErrorCode c, std::string t, const std::string& what)
    : std::runtime_error(std::string(code_name(c)) + ": " + what), code(c), term(std::move(t)) {}

int denote(const Structure& s, const Term& t, const Assignment& env) {
  return denote_impl(s, t, env);
}

bool eval(const Structure& s, Philosophy phil, const Assignment& env, const Formula& f) {
  Evaluator ev{s, phil, env};
  return ev.go(f);
}

ElemSet truth_set(const Structure& s, Philosophy phil, const std::string& var,
                  const Formula& body, const Assignment& env) {
  Evaluator ev{s, phil, env};
  ElemSet out = 0;
  for (int e = 0; e < s.n; ++e) {
    ev.env.emplace_back(var, e);
    if (ev.go(body)) out |= ElemSet{1} << e;
    ev.env.pop_back();
  }
  return out;
}

ElemSet complement_ext(const Structure& s, int e) { return s.universe() & ~ext(s, e); }

std::optional<int> find_by_ext(const Structure& s, ElemSet target, std::optional<bool> normalFlag) {
  for (int e = 0; e < s.n; ++e) {
    if (ext(s, e) != target) continue;
    if (normalFlag && s.is_normal(e) != *normalFlag) continue;
    return e;
  }
  return std::nullopt;
}

ElemSet hull(const Structure& s, int e, HullMode mode) {
  if (mode == HullMode::Downward) return down_closure(s, ElemSet{1} << e);
  return up_closure(s, ext(s, e));
}

ElemSet hull_plus(const Structure& s, int e, HullMode mode) {
  if (mode == HullMode::Downward) return down_closure(s, ext(s, e));
  return up_closure(s, ext(s, e)) & ~(ElemSet{1} << e);
}

ElemSet union_ext(const Structure& s, int e) {
  ElemSet out = 0;
  for (ElemSet work = ext(s, e); work;) {
    int m = __builtin_ctz(work);
    work &= work - 1;
    out |= ext(s, m);
  }
  return out;
}

ElemSet powerset_ext(const Structure& s, int e, bool normalOnly) {
  ElemSet out = 0;
  ElemSet x = ext(s, e);
  for (int y = 0; y < s.n; ++y) {
    if (ext(s, y) & ~x) continue;
    if (normalOnly && !s.is_normal(y)) continue;
    out |= ElemSet{1} << y;
  }
  return out;
}

bool surjection_exists(ElemSet a, ElemSet b) {
  if (a == 0) return b == 0;
  if (b == 0) return false;
  return popcount_set(a) >= popcount_set(b);
}

bool equipollent(ElemSet a, ElemSet b) { return popcount_set(a) == popcount_set(b); }

bool structural_predicate(const Structure& s, StructPred pred, int e, const SemOptions& opt) {
  switch (pred) {
    case StructPred::Slim:
      return popcount_set(ext(s, e)) < popcount_set(complement_ext(s, e));
    case StructPred::Mirimanoff:
      return (hull(s, e, HullMode::Downward) & cyclic_elements(s)) == 0;
    case StructPred::Founded:
      return founded_at(s, e, opt);
    case StructPred::HeriFounded: {
      for (ElemSet work = hull(s, e, opt.hullMode); work;) {
        int m = __builtin_ctz(work);
        work &= work - 1;
        if (ext(s, m) != 0 && !founded_at(s, m, opt)) return false;
      }
      return true;
    }
    case StructPred::Cantorian:
      return popcount_set(ext(s, e)) < popcount_set(powerset_ext(s, e, opt.powersetNormalOnly));
  }
  return false;
}

}  // namespace nam
