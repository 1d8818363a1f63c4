#include "nam/probe.hpp"

#include "nam/errors.hpp"
#include "nam/transform.hpp"

namespace nam {

namespace {

const char* kVariantNames[] = {"naive", "raBaDi", "rinoBaCo", "noBI", "noBE"};

bool is_free_var(const Term& t, const std::string& x) {
  return t.kind == TermKind::Variable && t.name == x;
}

// value of the body at y := t, with p = "t in t" and q = "N(t)"
bool ground_value(const Formula& f, const std::string& x, bool p, bool q) {
  switch (f.kind) {
    case FormulaKind::Verum: return true;
    case FormulaKind::Falsum: return false;
    case FormulaKind::Member:
      if (is_free_var(*f.t1, x) && is_free_var(*f.t2, x)) return p;
      throw CapError("probe body atom '" + to_text(f) + "' does not reduce to t in t");
    case FormulaKind::Equal:
      if (is_free_var(*f.t1, x) && is_free_var(*f.t2, x)) return true;
      throw CapError("probe body atom '" + to_text(f) + "' does not reduce to t = t");
    case FormulaKind::NormalAtom:
      if (is_free_var(*f.t1, x)) return q;
      throw CapError("probe body atom '" + to_text(f) + "' does not reduce to N(t)");
    case FormulaKind::Not: return !ground_value(*f.f1, x, p, q);
    case FormulaKind::And: return ground_value(*f.f1, x, p, q) && ground_value(*f.f2, x, p, q);
    case FormulaKind::Or: return ground_value(*f.f1, x, p, q) || ground_value(*f.f2, x, p, q);
    case FormulaKind::Implies:
      return !ground_value(*f.f1, x, p, q) || ground_value(*f.f2, x, p, q);
    case FormulaKind::Iff: return ground_value(*f.f1, x, p, q) == ground_value(*f.f2, x, p, q);
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      throw CapError("probe body must be quantifier-free");
  }
  throw CapError("probe body has an unsupported connective");
}

bool shell_value(ProbeVariant variant, bool p, bool q, bool a) {
  switch (variant) {
    case ProbeVariant::Naive: return p == a;
    case ProbeVariant::RaBaDi: return p == (a || !q);
    case ProbeVariant::RinoBaCo: return p == (a && q);
    case ProbeVariant::NoBI: return !q || (p == a);
    case ProbeVariant::NoBE: return (p == a) == q;
  }
  return false;
}

}  // namespace

std::string to_string(ProbeVariant v) { return kVariantNames[static_cast<int>(v)]; }

ProbeVariant probe_variant_from_string(const std::string& s) {
  for (int i = 0; i < 5; ++i)
    if (s == kVariantNames[i]) return static_cast<ProbeVariant>(i);
  throw ConfigError("unknown probe variant '" + s + "'");
}

std::string to_string(ForcedValue v) {
  switch (v) {
    case ForcedValue::True: return "true";
    case ForcedValue::False: return "false";
    case ForcedValue::Free: return "FREE";
  }
  return "?";
}

ProbeResult self_instantiation_probe(ProbeVariant variant, const FormulaPtr& A) {
  auto fv = free_vars(*A);
  if (fv.size() > 1)
    throw CapError("probe body must have at most one free variable");
  std::string x = fv.empty() ? "x" : *fv.begin();

  bool sat[2][2];  // [p][q]
  int satCount = 0;
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      bool a = ground_value(*A, x, p, q);
      sat[p][q] = shell_value(variant, p, q, a);
      if (sat[p][q]) ++satCount;
    }
  }

  ProbeResult r;
  r.variant = variant;
  r.body = to_text(*A);
  r.contradiction = satCount == 0;
  if (r.contradiction) return r;

  auto forced = [&](int atom) {  // 0: p, 1: q
    bool seen[2] = {false, false};
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        if (sat[p][q]) seen[atom == 0 ? p : q] = true;
    if (seen[0] && seen[1]) return ForcedValue::Free;
    return seen[1] ? ForcedValue::True : ForcedValue::False;
  };
  r.selfMembership = forced(0);
  r.normality = forced(1);
  return r;
}

}  // namespace nam
