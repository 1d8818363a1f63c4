#include "nam/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nam/errors.hpp"
#include "nam/stratify.hpp"
#include "nam/transform.hpp"

namespace nam {

namespace {

const char* kComprehensionNames[] = {"raBaDi", "rinoBaCo", "noBI", "noBE"};
const char* kExtensionalityNames[] = {"EE", "NEE", "none"};
const char* kFa4Names[] = {"none", "alfa", "beta",  "gamma", "eta",
                           "phi",  "psi",  "chi",   "jota",  "kappa"};
const char* kEaNames[] = {"EA1", "EA2", "EA3", "EA4", "EA5",
                          "EA6", "EA7", "EA8", "EA9", "KNoU"};
const char* kConstNames[] = {"US", "OM", "AT"};

template <typename E, size_t N>
E from_table(const char* const (&table)[N], const std::string& s, const char* what) {
  for (size_t i = 0; i < N; ++i)
    if (s == table[i]) return static_cast<E>(i);
  throw ConfigError(std::string("unknown ") + what + " '" + s + "'");
}

void collect_names(const Formula& f, std::set<std::string>& out);

void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case TermKind::Variable: out.insert(t.name); break;
    case TermKind::Constant: break;
    case TermKind::Builder:
      out.insert(t.name);
      collect_names(*t.body, out);
      break;
  }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (f.t1) collect_names(*f.t1, out);
  if (f.t2) collect_names(*f.t2, out);
  if (!f.var.empty()) out.insert(f.var);
  if (f.f1) collect_names(*f.f1, out);
  if (f.f2) collect_names(*f.f2, out);
}

bool has_builder(const Formula& f);

bool has_builder(const Term& t) {
  return t.kind == TermKind::Builder;
}

bool has_builder(const Formula& f) {
  if (f.t1 && has_builder(*f.t1)) return true;
  if (f.t2 && has_builder(*f.t2)) return true;
  if (f.f1 && has_builder(*f.f1)) return true;
  if (f.f2 && has_builder(*f.f2)) return true;
  return false;
}

std::string instance_binder(const Formula& A, const std::string& builderVar) {
  std::set<std::string> taken;
  collect_names(A, taken);
  taken.insert(builderVar);
  for (const char* c : {"y", "z", "w", "v", "u"})
    if (!taken.count(c)) return c;
  for (int i = 1;; ++i) {
    std::string name = "y" + std::to_string(i);
    if (!taken.count(name)) return name;
  }
}

std::string comprehension_id(Comprehension v) { return to_string(v) + "-CoS"; }

ElemSet empty_ext_mask(const Structure& s) {
  ElemSet m = 0;
  for (int e = 0; e < s.n; ++e)
    if (ext(s, e) == 0) m |= ElemSet{1} << e;
  return m;
}

bool exists_normal_with_ext(const Structure& s, ElemSet target) {
  return find_by_ext(s, target, true).has_value();
}

bool equal_active(const Structure& s, Philosophy phil, int a, int b) {
  if (phil == Philosophy::A) return a == b;
  return ext(s, a) == ext(s, b) && s.is_normal(a) == s.is_normal(b);
}

// truth set of a family body over its own free variable (x when closed)
ElemSet body_truth_set(const Structure& s, Philosophy phil, const Formula& A) {
  auto fv = free_vars(A);
  std::string var = fv.empty() ? "x" : *fv.begin();
  return truth_set(s, phil, var, A);
}

int nc_base_of(int nc) {
  switch (nc) {
    case 3: return 1;
    case 4: return 2;
    case 7: return 5;
    case 8: return 6;
    case 13: return 9;
    case 14: return 10;
    case 15: return 11;
    case 16: return 12;
    default: return nc;
  }
}

bool nc_is_hull_form(int nc) { return nc_base_of(nc) != nc; }

bool nc_base_antecedent(const Structure& s, int nc, int e, const CheckOptions& opt) {
  ElemSet x = ext(s, e);
  ElemSet ko = complement_ext(s, e);
  SemOptions sem{opt.hullMode, opt.strictFounded, false};
  switch (nc) {
    case 1: return !surjection_exists(x, ko);
    case 2: return structural_predicate(s, StructPred::Slim, e, sem);
    case 5:
      if (opt.nc5Bijection) return !equipollent(x, ko);
      return !surjection_exists(x, ko) || !surjection_exists(ko, x);
    case 6: return !equipollent(x, ko);
    case 9: return !s.member(e, e);
    case 10: return !((hull_plus(s, e, HullMode::Downward) >> e) & 1);
    case 11: return structural_predicate(s, StructPred::Mirimanoff, e, sem);
    case 12: return structural_predicate(s, StructPred::Founded, e, sem);
    default: throw ConfigError("nc " + std::to_string(nc) + " has no base antecedent");
  }
}

SchemaInstance meta(std::string id, int element = -1, FormulaPtr f = nullptr, bool evaluable = true) {
  SchemaInstance inst;
  inst.kind = SchemaInstance::Kind::MetaCheck;
  inst.schemaId = std::move(id);
  inst.element = element;
  inst.formula = std::move(f);
  inst.evaluable = evaluable;
  return inst;
}

std::string nc_id(const NcChoice& nc) {
  if (nc.stratified) return "NC-strat";
  return "NC" + std::to_string(nc.number) + (nc.primed ? "'" : "");
}

std::string fa4_id(Fa4Variant v) { return "FA4" + to_string(v); }

}  // namespace

std::string to_string(Comprehension c) { return kComprehensionNames[static_cast<int>(c)]; }
std::string to_string(Philosophy p) { return p == Philosophy::A ? "A" : "B"; }
std::string to_string(Extensionality e) { return kExtensionalityNames[static_cast<int>(e)]; }
std::string to_string(Fa4Variant v) { return kFa4Names[static_cast<int>(v)]; }
std::string to_string(Ea ea) { return kEaNames[static_cast<int>(ea)]; }

std::string to_string(ConstTag t) { return kConstNames[static_cast<int>(t)]; }

Comprehension comprehension_from_string(const std::string& s) {
  return from_table<Comprehension>(kComprehensionNames, s, "comprehension variant");
}
ConstTag const_tag_from_string(const std::string& s) {
  return from_table<ConstTag>(kConstNames, s, "constant tag");
}
Philosophy philosophy_from_string(const std::string& s) {
  if (s == "A") return Philosophy::A;
  if (s == "B") return Philosophy::B;
  throw ConfigError("unknown philosophy '" + s + "'");
}
Extensionality extensionality_from_string(const std::string& s) {
  return from_table<Extensionality>(kExtensionalityNames, s, "extensionality");
}
Fa4Variant fa4_from_string(const std::string& s) {
  return from_table<Fa4Variant>(kFa4Names, s, "FA4 variant");
}
Ea ea_from_string(const std::string& s) { return from_table<Ea>(kEaNames, s, "eventuality axiom"); }

void validate(const SystemConfig& config) {
  if (config.name.empty()) throw ConfigError("config name must not be empty");
  if (config.familyDepth < 0 || config.familyDepth > kMaxFamilyDepth)
    throw ConfigError("familyDepth out of range");
  const NcChoice& nc = config.nc;
  if (nc.number < 0 || nc.number > 16) throw ConfigError("nc out of range");
  if (nc.stratified && nc.number != 0)
    throw ConfigError("nc cannot be both numbered and stratified");
  if (nc.primed && !(nc.number >= 5 && nc.number <= 8))
    throw ConfigError("primed requires nc in 5..8");
  if (config.dropNormalY &&
      (config.fa4 == Fa4Variant::None || static_cast<int>(config.fa4) < static_cast<int>(Fa4Variant::Eta)))
    throw ConfigError("dropNormalY applies only to FA4 eta..kappa");
  if (!std::is_sorted(config.eventualities.begin(), config.eventualities.end()) ||
      std::adjacent_find(config.eventualities.begin(), config.eventualities.end()) !=
          config.eventualities.end())
    throw ConfigError("eventualities must be ascending and unique");
}

const std::array<const char*, 12> kPresetNames = {
    "NAM0a", "NAM0b", "NAM0c", "NAM1a", "NAM1b", "NAM1c",
    "NAM2a", "NAM2b", "NAM2c", "NAM1aKNoU", "NAM2cKN", "NAM-ZF"};

SystemConfig preset(const std::string& name) {
  SystemConfig c;
  c.name = name;
  c.philosophy = Philosophy::A;
  c.extensionality = Extensionality::EE;
  c.atTarget = ConstTag::US;
  c.familyDepth = 1;
  c.recordBa4 = true;

  auto kernel = [&](Comprehension comp) { c.comprehension = comp; };
  auto fullFa = [&](Fa4Variant v) {
    c.fa1 = c.fa2 = c.fa3 = true;
    c.fa4 = v;
  };
  auto firstThreeEas = [&] { c.eventualities = {Ea::EA1, Ea::EA2, Ea::EA3}; };

  if (name == "NAM0a") {
    kernel(Comprehension::RaBaDi);
  } else if (name == "NAM0b") {
    kernel(Comprehension::RinoBaCo);
  } else if (name == "NAM0c") {
    kernel(Comprehension::NoBI);
  } else if (name == "NAM1a" || name == "NAM2a" || name == "NAM-ZF" || name == "NAM1aKNoU") {
    kernel(Comprehension::RaBaDi);
    fullFa(Fa4Variant::Alfa);
    c.nc.number = (name == "NAM2a") ? 2 : (name == "NAM-ZF") ? 0 : 1;
    if (name == "NAM1aKNoU") {
      c.eventualities = {Ea::KNoU};
      c.extraNotEvaluated = {"FA4delta"};
    }
  } else if (name == "NAM1b" || name == "NAM2b") {
    kernel(Comprehension::RinoBaCo);
    fullFa(Fa4Variant::Beta);
    firstThreeEas();
    c.nc.number = (name == "NAM2b") ? 2 : 1;
  } else if (name == "NAM1c" || name == "NAM2c" || name == "NAM2cKN") {
    kernel(Comprehension::NoBI);
    fullFa(Fa4Variant::Beta);
    firstThreeEas();
    c.nc.number = (name == "NAM1c") ? 1 : 2;
    if (name == "NAM2cKN") c.eventualities.push_back(Ea::EA6);
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  validate(c);
  return c;
}

SemOptions sem_options(const SystemConfig& config, const CheckOptions& opt) {
  return SemOptions{opt.hullMode, opt.strictFounded, config.powersetNormalOnly};
}

SchemaInstance comprehension_instance(Comprehension variant, const FormulaPtr& A) {
  auto fv = free_vars(*A);
  if (fv.size() > 1)
    throw ConfigError("comprehension body must have at most one free variable");
  std::string builderVar = fv.empty() ? "x" : *fv.begin();
  TermPtr t = mk_builder(builderVar, A);
  std::string binder = instance_binder(*A, builderVar);
  TermPtr y = mk_var(binder);
  FormulaPtr Ay = fv.empty() ? A : substitute(A, builderVar, y);
  FormulaPtr memb = member_of(y, t);
  FormulaPtr nt = normal_atom(t);

  FormulaPtr payload;
  switch (variant) {
    case Comprehension::RaBaDi:
      payload = forall(binder, iff(memb, disj(Ay, neg(nt))));
      break;
    case Comprehension::RinoBaCo:
      payload = forall(binder, iff(memb, conj(Ay, nt)));
      break;
    case Comprehension::NoBI:
      payload = implies(nt, forall(binder, iff(memb, Ay)));
      break;
    case Comprehension::NoBE: {
      FormulaPtr pointwise = forall(binder, iff(memb, Ay));
      payload = conj(implies(nt, pointwise), implies(pointwise, nt));
      break;
    }
  }

  SchemaInstance inst;
  inst.kind = SchemaInstance::Kind::ClosedFormula;
  inst.schemaId = comprehension_id(variant);
  inst.formula = payload;
  return inst;
}

PreparedFamily prepare_family_from(const SystemConfig& config, std::vector<FormulaPtr> members) {
  PreparedFamily out;
  out.members = std::move(members);
  for (const auto& m : out.members) {
    if (has_builder(*m))
      throw ConfigError("family member contains a set-builder term: " + to_text(*m));
    if (free_vars(*m).size() > 1)
      throw ConfigError("family member has more than one free variable: " + to_text(*m));
  }
  bool ea9 = std::find(config.eventualities.begin(), config.eventualities.end(), Ea::EA9) !=
             config.eventualities.end();

  std::map<std::string, int> byText;
  for (size_t i = 0; i < out.members.size(); ++i)
    byText.emplace(to_text(*out.members[i]), static_cast<int>(i));

  if (ea9) {
    for (size_t i = 0; i < out.members.size(); ++i) {
      FormulaPtr supp = supplement(out.members[i]);
      if (byText.emplace(to_text(*supp), static_cast<int>(out.members.size())).second)
        out.members.push_back(supp);
    }
    out.suppIndex.resize(out.members.size());
    for (size_t i = 0; i < out.members.size(); ++i)
      out.suppIndex[i] = byText.at(to_text(*supplement(out.members[i])));
  } else {
    out.suppIndex.assign(out.members.size(), -1);
  }

  out.builderKeys.reserve(out.members.size());
  for (const auto& m : out.members) {
    auto fv = free_vars(*m);
    out.builderKeys.push_back(to_text(*mk_builder(fv.empty() ? "x" : *fv.begin(), m)));
  }
  return out;
}

PreparedFamily prepare_family(const SystemConfig& config) {
  FormulaFamily fam = enumerate_family(config.familyDepth, false);
  return prepare_family_from(config, fam.members);
}

std::vector<FormulaPtr> binary_family(const SystemConfig& config) {
  return enumerate_formulas(config.familyDepth, {"x", "y"}, false);
}

std::array<ElemSet, kMaxN> binary_relation(const Structure& s, Philosophy phil, const Formula& A) {
  std::array<ElemSet, kMaxN> rows{};
  for (int u = 0; u < s.n; ++u)
    rows[static_cast<size_t>(u)] = truth_set(s, phil, "y", A, {{"x", u}});
  return rows;
}

bool functional_on(const Structure& s, const std::array<ElemSet, kMaxN>& rows) {
  for (int u = 0; u < s.n; ++u)
    if (popcount_set(rows[static_cast<size_t>(u)]) > 1) return false;
  return true;
}

bool ee_holds(const Structure& s) {
  for (int a = 0; a < s.n; ++a)
    for (int b = a + 1; b < s.n; ++b)
      if (ext(s, a) == ext(s, b)) return false;
  return true;
}

bool nee_holds(const Structure& s, Philosophy phil) {
  for (int a = 0; a < s.n; ++a)
    for (int b = a + 1; b < s.n; ++b)
      if ((ext(s, a) & s.normalMask) == (ext(s, b) & s.normalMask) &&
          !equal_active(s, phil, a, b))
        return false;
  return true;
}

bool materialized_normal(const Structure& s, ElemSet target, const CheckOptions& opt) {
  if (!find_by_ext(s, target)) return !opt.requireClosure;
  return exists_normal_with_ext(s, target);
}

bool fa1_holds(const Structure& s) { return s.is_normal(*s.designation(ConstTag::OM)); }

bool fa2_holds_at(const Structure& s, int e, const SystemConfig& config, const CheckOptions& opt) {
  if (!s.is_normal(e)) return true;
  return materialized_normal(s, powerset_ext(s, e, config.powersetNormalOnly), opt);
}

bool fa3_holds_at(const Structure& s, int e, const SystemConfig& config, const CheckOptions& opt) {
  (void)config;
  if (!s.is_normal(e)) return true;
  if (ext(s, e) & ~s.normalMask) return true;  // some member is not Normal
  return materialized_normal(s, union_ext(s, e), opt);
}

bool fa4_holds_at(const Structure& s, int e, const std::array<ElemSet, kMaxN>& rows,
                  const SystemConfig& config, const CheckOptions& opt) {
  if (!s.is_normal(e)) return true;
  ElemSet x = ext(s, e);
  SemOptions sem = sem_options(config, opt);

  bool ante = true;
  switch (config.fa4) {
    case Fa4Variant::None: return true;
    case Fa4Variant::Alfa:
    case Fa4Variant::Beta: {
      bool nonempty = false;
      for (ElemSet w = x; w && !nonempty; w &= w - 1)
        nonempty = rows[static_cast<size_t>(__builtin_ctz(w))] != 0;
      ante = nonempty;
      break;
    }
    case Fa4Variant::Gamma: break;
    case Fa4Variant::Eta: ante = !surjection_exists(x, complement_ext(s, e)); break;
    case Fa4Variant::Phi: ante = structural_predicate(s, StructPred::Slim, e, sem); break;
    case Fa4Variant::Psi: ante = structural_predicate(s, StructPred::Mirimanoff, e, sem); break;
    case Fa4Variant::Chi: ante = structural_predicate(s, StructPred::Founded, e, sem); break;
    case Fa4Variant::Jota: ante = structural_predicate(s, StructPred::HeriFounded, e, sem); break;
    case Fa4Variant::Kappa: ante = structural_predicate(s, StructPred::Cantorian, e, sem); break;
  }
  if (!ante) return true;

  ElemSet image = 0;
  for (ElemSet w = x; w; w &= w - 1) image |= rows[static_cast<size_t>(__builtin_ctz(w))];

  switch (config.fa4) {
    case Fa4Variant::Alfa: break;
    case Fa4Variant::Beta: image &= s.normalMask | empty_ext_mask(s); break;
    case Fa4Variant::Gamma: image &= s.normalMask; break;
    default:
      if (!config.dropNormalY) image &= s.normalMask;
      break;
  }
  return materialized_normal(s, image, opt);
}

bool ea_holds(const Structure& s, Ea ea, const SystemConfig& config, const PreparedFamily& family,
              const CheckOptions& opt) {
  switch (ea) {
    case Ea::EA1: {
      auto at = s.designation(config.atTarget);
      if (!at) return true;  // callers gate via evaluable
      return materialized_normal(s, ElemSet{1} << *at, opt);
    }
    case Ea::EA2: {
      std::map<ElemSet, int> firstByTruthSet;
      for (size_t i = 0; i < family.members.size(); ++i) {
        auto it = s.denotations.find(family.builderKeys[i]);
        if (it == s.denotations.end()) continue;
        ElemSet ts = body_truth_set(s, config.philosophy, *family.members[i]);
        auto [pos, added] = firstByTruthSet.emplace(ts, it->second);
        if (!added && !equal_active(s, config.philosophy, pos->second, it->second)) return false;
      }
      return true;
    }
    case Ea::EA3: {
      for (int a = 0; a < s.n; ++a) {
        if (s.is_normal(a)) continue;
        for (int b = a + 1; b < s.n; ++b)
          if (!s.is_normal(b) && !equipollent(ext(s, a), ext(s, b))) return false;
      }
      return true;
    }
    case Ea::EA4: {
      auto at = s.designation(config.atTarget);
      if (!at) return true;
      for (int x = 0; x < s.n; ++x) {
        if (!s.is_normal(x)) continue;
        for (ElemSet w = ext(s, x); w; w &= w - 1) {
          int y = __builtin_ctz(w);
          if (!s.is_normal(y) && !equal_active(s, config.philosophy, y, *at)) return false;
        }
      }
      return true;
    }
    case Ea::EA5: {
      for (int x = 0; x < s.n; ++x)
        if (s.is_normal(x) && (ext(s, x) & ~s.normalMask)) return false;
      return true;
    }
    case Ea::EA6: {
      for (int x = 0; x < s.n; ++x)
        if (s.is_normal(x) && !materialized_normal(s, complement_ext(s, x), opt)) return false;
      return true;
    }
    case Ea::EA7: {
      for (int x = 0; x < s.n; ++x) {
        ElemSet ko = complement_ext(s, x);
        if (!find_by_ext(s, ko)) {
          if (opt.requireClosure) return false;
          continue;
        }
        if (s.is_normal(x) == exists_normal_with_ext(s, ko)) return false;
      }
      return true;
    }
    case Ea::EA8: {
      for (int x = 0; x < s.n; ++x) {
        ElemSet ko = complement_ext(s, x);
        if (!find_by_ext(s, ko)) {
          if (opt.requireClosure) return false;
          continue;
        }
        if (!s.is_normal(x) && !exists_normal_with_ext(s, ko)) return false;
      }
      return true;
    }
    case Ea::EA9: {
      for (size_t i = 0; i < family.members.size(); ++i) {
        int j = family.suppIndex[static_cast<size_t>(i)];
        if (j < 0 || static_cast<int>(i) > j) continue;
        auto a = s.denotations.find(family.builderKeys[i]);
        auto b = s.denotations.find(family.builderKeys[static_cast<size_t>(j)]);
        if (a == s.denotations.end() || b == s.denotations.end()) continue;
        if (!s.is_normal(a->second) && !s.is_normal(b->second)) return false;
      }
      return true;
    }
    case Ea::KNoU: {
      for (int x = 0; x < s.n; ++x) {
        if (!s.is_normal(x)) continue;
        ElemSet ko = complement_ext(s, x);
        if (ko == s.universe()) continue;  // ko(x) = us escape
        if (!find_by_ext(s, ko)) {
          if (opt.requireClosure) return false;
          continue;
        }
        if (!exists_normal_with_ext(s, ko)) return false;
      }
      return true;
    }
  }
  return true;
}

bool nc_antecedent(const Structure& s, int nc, int e, bool primed, const CheckOptions& opt) {
  (void)primed;  // the primed appendix widens the consequent, not the antecedent
  if (nc < 1 || nc > 16) throw ConfigError("nc number out of range");
  if (!nc_is_hull_form(nc)) return nc_base_antecedent(s, nc, e, opt);
  int base = nc_base_of(nc);
  for (ElemSet w = hull(s, e, opt.hullMode); w; w &= w - 1)
    if (!nc_base_antecedent(s, base, __builtin_ctz(w), opt)) return false;
  return true;
}

bool nc_escape(const Structure& s, int nc, int e, bool primed) {
  ElemSet x = ext(s, e);
  if (nc == 1) return x == s.universe();
  if (primed && nc >= 5 && nc <= 8) return x == s.universe() || x == 0;
  return false;
}

bool nc_holds_at(const Structure& s, int nc, int e, bool primed, const CheckOptions& opt) {
  if (!nc_antecedent(s, nc, e, primed, opt)) return true;
  return s.is_normal(e) || nc_escape(s, nc, e, primed);
}

bool nc_axiom_holds(const Structure& s, const SystemConfig& config, const CheckOptions& opt,
                    const PreparedFamily* family) {
  const NcChoice& nc = config.nc;
  if (nc.stratified) {
    if (!family) return true;
    for (size_t i = 0; i < family->members.size(); ++i) {
      if (!stratified(*family->members[i])) continue;
      auto it = s.denotations.find(family->builderKeys[i]);
      if (it != s.denotations.end() && !s.is_normal(it->second)) return false;
    }
    return true;
  }
  if (nc.number == 0) return true;
  for (int e = 0; e < s.n; ++e)
    if (!nc_holds_at(s, nc.number, e, nc.primed, opt)) return false;
  return true;
}

std::vector<std::string> not_evaluated_entries(const SystemConfig& config, bool omDesignated,
                                               bool atDesignated) {
  std::vector<std::string> out;
  if (config.recordBa4) out.push_back("BA4c");
  if (config.fa1 && !omDesignated) out.push_back("FA1");
  auto has = [&](Ea ea) {
    return std::find(config.eventualities.begin(), config.eventualities.end(), ea) !=
           config.eventualities.end();
  };
  if (has(Ea::EA1) && !atDesignated) out.push_back("EA1");
  if (has(Ea::EA4) && !atDesignated) out.push_back("EA4");
  for (const auto& extra : config.extraNotEvaluated) out.push_back(extra);
  return out;
}

std::vector<SchemaInstance> list_axiom_instances(const SystemConfig& config,
                                                 const PreparedFamily& family, const Structure& s) {
  std::vector<SchemaInstance> out;
  for (const auto& m : family.members)
    out.push_back(comprehension_instance(config.comprehension, m));

  if (config.extensionality == Extensionality::EE)
    out.push_back(meta("EE"));
  else if (config.extensionality == Extensionality::NEE)
    out.push_back(meta("NEE"));

  if (config.recordBa4) out.push_back(meta("BA4c", -1, nullptr, false));
  if (config.fa1) out.push_back(meta("FA1", -1, nullptr, s.designation(ConstTag::OM).has_value()));
  if (config.fa2)
    for (int e = 0; e < s.n; ++e) out.push_back(meta("FA2", e));
  if (config.fa3)
    for (int e = 0; e < s.n; ++e) out.push_back(meta("FA3", e));
  if (config.fa4 != Fa4Variant::None) {
    for (const auto& A : binary_family(config)) {
      if (!functional_on(s, binary_relation(s, config.philosophy, *A))) continue;
      for (int e = 0; e < s.n; ++e) out.push_back(meta(fa4_id(config.fa4), e, A));
    }
  }

  bool atDesignated = s.designation(config.atTarget).has_value();
  for (Ea ea : config.eventualities) {
    bool evaluable = (ea != Ea::EA1 && ea != Ea::EA4) || atDesignated;
    out.push_back(meta(to_string(ea), -1, nullptr, evaluable));
  }

  if (config.nc.stratified) {
    for (const auto& m : family.members) out.push_back(meta("NC-strat", -1, m));
  } else if (config.nc.number != 0) {
    for (int e = 0; e < s.n; ++e) out.push_back(meta(nc_id(config.nc), e));
  }
  return out;
}

bool instance_holds(const Structure& s, const SchemaInstance& inst, const SystemConfig& config,
                    const PreparedFamily& family, const CheckOptions& opt) {
  if (!inst.evaluable)
    throw ConfigError("instance " + inst.schemaId + " is not evaluable");
  if (inst.kind == SchemaInstance::Kind::ClosedFormula)
    return eval(s, config.philosophy, {}, *inst.formula);

  const std::string& id = inst.schemaId;
  if (id == "EE") return ee_holds(s);
  if (id == "NEE") return nee_holds(s, config.philosophy);
  if (id == "FA1") return fa1_holds(s);
  if (id == "FA2") return fa2_holds_at(s, inst.element, config, opt);
  if (id == "FA3") return fa3_holds_at(s, inst.element, config, opt);
  if (id.rfind("FA4", 0) == 0)
    return fa4_holds_at(s, inst.element, binary_relation(s, config.philosophy, *inst.formula),
                        config, opt);
  if (id == "NC-strat") {
    if (!stratified(*inst.formula)) return true;
    auto fv = free_vars(*inst.formula);
    std::string key = to_text(*mk_builder(fv.empty() ? "x" : *fv.begin(), inst.formula));
    auto it = s.denotations.find(key);
    return it == s.denotations.end() || s.is_normal(it->second);
  }
  if (id.rfind("NC", 0) == 0) {
    int number = std::stoi(id.substr(2));
    bool primed = id.back() == '\'';
    return nc_holds_at(s, number, inst.element, primed, opt);
  }
  for (int i = 0; i < 10; ++i)
    if (id == kEaNames[i]) return ea_holds(s, static_cast<Ea>(i), config, family, opt);
  throw ConfigError("unknown schema id '" + id + "'");
}

}  // namespace nam
