#include "nam/search.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <exception>
#include <stdexcept>
#include <thread>

#include "nam/errors.hpp"
#include "nam/parse.hpp"
#include "nam/semantics.hpp"
#include "nam/stratify.hpp"
#include "nam/transform.hpp"

namespace nam {

namespace {

void check_size(int n) {
  if (n < 1 || n > kMaxN)
    throw CapError("structure size " + std::to_string(n) + " outside 1.." +
                   std::to_string(kMaxN));
}

// Counter bit (n*n - 1 - k) drives serialized grid position k, so ascending counters
// enumerate serialized grids in string-lexicographic order.
Structure decode_structure(int n, uint64_t rel, uint32_t labels) {
  Structure s;
  s.n = n;
  for (int k = 0; k < n * n; ++k) {
    if ((rel >> (n * n - 1 - k)) & 1u) {
      int r = k / n, c = k % n;
      s.ext[static_cast<size_t>(c)] |= ElemSet(1) << r;
    }
  }
  for (int i = 0; i < n; ++i)
    if ((labels >> (n - 1 - i)) & 1u) s.normalMask |= ElemSet(1) << i;
  return s;
}

bool passes_constraints(Structure& s, const EnumConstraints& c) {
  if (c.extensionalOnly || c.quotientB) {
    for (int a = 0; a < s.n; ++a)
      for (int b = a + 1; b < s.n; ++b) {
        if (s.ext[static_cast<size_t>(a)] != s.ext[static_cast<size_t>(b)]) continue;
        if (c.extensionalOnly) return false;
        if (s.is_normal(a) == s.is_normal(b)) return false;
      }
  }
  if (c.designateUS) {
    int us = -1;
    for (int e = 0; e < s.n; ++e)
      if (s.ext[static_cast<size_t>(e)] == s.universe()) {
        us = e;
        break;
      }
    if (us < 0) return false;
    s.designations[static_cast<size_t>(ConstTag::US)] = us;
  }
  return true;
}

struct Partial {
  uint64_t candidates = 0;
  uint64_t modelCount = 0;
  std::vector<Structure> witnesses;
  std::map<std::string, uint64_t> violationCounts;
  std::vector<Violation> sampleViolations;
  std::exception_ptr error;
};

struct Scratch {
  std::vector<ElemSet> ts, cand;
  std::vector<int> unitOf;
  std::vector<ElemSet> unitSets, filteredSets, workSets;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> choice;
};

// Lex-first assignment of one element per unit, complete backtracking over the
// binary constraints N(a) or N(b) induced by supplement pairs. Self-pairs become
// the unary constraint N(a).
bool assign_units(const Structure& s, Scratch& sc, const std::vector<ElemSet>& sets) {
  size_t U = sets.size();
  sc.workSets = sets;
  for (auto [a, b] : sc.pairs)
    if (a == b) sc.workSets[static_cast<size_t>(a)] &= s.normalMask;
  for (ElemSet m : sc.workSets)
    if (m == 0) return false;

  sc.choice.assign(U, -1);
  if (sc.pairs.empty()) {
    for (size_t u = 0; u < U; ++u) sc.choice[u] = std::countr_zero(sc.workSets[u]);
    return true;
  }

  std::vector<std::vector<std::pair<int, int>>> bucket(U);
  for (auto [a, b] : sc.pairs)
    if (a != b) bucket[static_cast<size_t>(std::max(a, b))].emplace_back(a, b);

  std::function<bool(size_t)> rec = [&](size_t u) -> bool {
    if (u == U) return true;
    for (int e = 0; e < s.n; ++e) {
      if (!((sc.workSets[u] >> e) & 1u)) continue;
      sc.choice[u] = e;
      bool ok = true;
      for (auto [a, b] : bucket[u])
        if (!s.is_normal(sc.choice[static_cast<size_t>(a)]) &&
            !s.is_normal(sc.choice[static_cast<size_t>(b)])) {
          ok = false;
          break;
        }
      if (ok && rec(u + 1)) return true;
    }
    sc.choice[u] = -1;
    return false;
  };
  return rec(0);
}

class Engine {
 public:
  Engine(const SystemConfig& config, const PreparedFamily& family, const SearchOptions& opt)
      : config_(config), family_(family), opt_(opt) {
    validate(config_);
    comprehensionId_ = to_string(config_.comprehension) + "-CoS";
    fa4Id_ = "FA4" + to_string(config_.fa4);
    ncId_ = "NC" + std::to_string(config_.nc.number) + (config_.nc.primed ? "'" : "");
    ea2_ = has_ea(Ea::EA2);
    ea9_ = has_ea(Ea::EA9);
    knou_ = has_ea(Ea::KNoU);
    if (config_.fa4 != Fa4Variant::None) binFamily_ = binary_family(config_);
    stratFlag_.assign(family_.members.size(), 0);
    if (config_.nc.stratified) {
      for (size_t i = 0; i < family_.members.size(); ++i)
        if (stratified(*family_.members[i])) {
          stratFlag_[i] = 1;
          anyStrat_ = true;
        }
    }
    memberVar_.reserve(family_.members.size());
    for (const auto& m : family_.members) {
      auto fv = free_vars(*m);
      memberVar_.push_back(fv.empty() ? "x" : *fv.begin());
    }
  }

  const SystemConfig& config() const { return config_; }

  // Accepts or rejects one candidate; on accept fills s.denotations, on reject
  // fills viol with the first failing schema in checklist order.
  bool check(Structure& s, Scratch& sc, Violation& viol) const {
    const int n = s.n;
    const ElemSet univ = s.universe();
    const size_t M = family_.members.size();

    auto reject = [&](std::string id, int elem, const Formula* f) {
      viol.schemaId = std::move(id);
      viol.element = elem;
      viol.formula = f ? to_text(*f) : "";
      viol.structure = serialize(s);
      return false;
    };

    sc.ts.resize(M);
    sc.cand.resize(M);
    for (size_t i = 0; i < M; ++i) {
      ElemSet tsv = truth_set(s, config_.philosophy, memberVar_[i], *family_.members[i]);
      ElemSet c = 0;
      for (int e = 0; e < n; ++e) {
        ElemSet xe = ext(s, e);
        bool ok = false;
        if (s.is_normal(e)) {
          ok = xe == tsv;
        } else {
          switch (config_.comprehension) {
            case Comprehension::RaBaDi: ok = xe == univ; break;
            case Comprehension::RinoBaCo: ok = xe == 0; break;
            case Comprehension::NoBI: ok = true; break;
            case Comprehension::NoBE: ok = xe != tsv; break;
          }
        }
        if (ok) c |= ElemSet(1) << e;
      }
      if (c == 0) return reject(comprehensionId_, -1, family_.members[i].get());
      sc.ts[i] = tsv;
      sc.cand[i] = c;
    }

    if (config_.extensionality == Extensionality::EE && !ee_holds(s))
      return reject("EE", -1, nullptr);
    if (config_.extensionality == Extensionality::NEE && !nee_holds(s, config_.philosophy))
      return reject("NEE", -1, nullptr);

    if (config_.fa1 && s.designation(ConstTag::OM) && !fa1_holds(s))
      return reject("FA1", -1, nullptr);
    if (config_.fa2)
      for (int e = 0; e < n; ++e)
        if (!fa2_holds_at(s, e, config_, opt_.check)) return reject("FA2", e, nullptr);
    if (config_.fa3)
      for (int e = 0; e < n; ++e)
        if (!fa3_holds_at(s, e, config_, opt_.check)) return reject("FA3", e, nullptr);
    if (config_.fa4 != Fa4Variant::None) {
      for (const auto& A : binFamily_) {
        auto rows = binary_relation(s, config_.philosophy, *A);
        if (!functional_on(s, rows)) continue;
        for (int e = 0; e < n; ++e)
          if (!fa4_holds_at(s, e, rows, config_, opt_.check)) return reject(fa4Id_, e, A.get());
      }
    }

    // EA2 and EA9 constrain the denotation table the search itself chooses; the
    // remaining eventualities are structure-level and checked here in listed order.
    for (Ea ea : config_.eventualities) {
      if (ea == Ea::EA2 || ea == Ea::EA9 || ea == Ea::KNoU) continue;
      if (!ea_holds(s, ea, config_, family_, opt_.check))
        return reject(to_string(ea), -1, nullptr);
    }

    // Denotation units: one shared choice per truth set under EA2, one per member
    // otherwise. Same truth set always means same candidate set, so EA2 itself
    // never rejects a structure; it only couples the choices below.
    sc.unitOf.assign(M, -1);
    sc.unitSets.clear();
    if (ea2_) {
      std::map<ElemSet, int> unitByTs;
      for (size_t i = 0; i < M; ++i) {
        auto [it, fresh] = unitByTs.emplace(sc.ts[i], static_cast<int>(sc.unitSets.size()));
        if (fresh) sc.unitSets.push_back(sc.cand[i]);
        sc.unitOf[i] = it->second;
      }
    } else {
      sc.unitSets = sc.cand;
      for (size_t i = 0; i < M; ++i) sc.unitOf[i] = static_cast<int>(i);
    }

    sc.pairs.clear();
    if (ea9_) {
      for (size_t i = 0; i < M; ++i) {
        int j = family_.suppIndex[i];
        int a = sc.unitOf[i], b = sc.unitOf[static_cast<size_t>(j)];
        sc.pairs.emplace_back(std::min(a, b), std::max(a, b));
      }
      std::sort(sc.pairs.begin(), sc.pairs.end());
      sc.pairs.erase(std::unique(sc.pairs.begin(), sc.pairs.end()), sc.pairs.end());
      if (!assign_units(s, sc, sc.unitSets)) return reject("EA9", -1, nullptr);
    }

    if (knou_ && !ea_holds(s, Ea::KNoU, config_, family_, opt_.check))
      return reject("KNoU", -1, nullptr);

    if (anyStrat_) {
      sc.filteredSets = sc.unitSets;
      for (size_t i = 0; i < M; ++i)
        if (stratFlag_[i]) sc.filteredSets[static_cast<size_t>(sc.unitOf[i])] &= s.normalMask;
      if (!ea9_) {
        for (size_t i = 0; i < M; ++i)
          if (stratFlag_[i] && sc.filteredSets[static_cast<size_t>(sc.unitOf[i])] == 0)
            return reject("NC-strat", -1, family_.members[i].get());
      }
      if (!assign_units(s, sc, sc.filteredSets)) {
        const Formula* first = nullptr;
        for (size_t i = 0; i < M; ++i)
          if (stratFlag_[i]) {
            first = family_.members[i].get();
            break;
          }
        return reject("NC-strat", -1, first);
      }
    } else if (!ea9_) {
      if (!assign_units(s, sc, sc.unitSets))
        throw std::logic_error("unit assignment failed without constraints");
    }

    if (!config_.nc.stratified && config_.nc.number != 0) {
      for (int e = 0; e < n; ++e)
        if (!nc_holds_at(s, config_.nc.number, e, config_.nc.primed, opt_.check))
          return reject(ncId_, e, nullptr);
    }

    s.denotations.clear();
    for (size_t i = 0; i < M; ++i)
      s.denotations[family_.builderKeys[i]] = sc.choice[static_cast<size_t>(sc.unitOf[i])];

    if (opt_.honestyCheck) verify_model(s);
    return true;
  }

 private:
  bool has_ea(Ea ea) const {
    return std::find(config_.eventualities.begin(), config_.eventualities.end(), ea) !=
           config_.eventualities.end();
  }

  // Re-derives every checklist instance through the generic evaluators; an accepted
  // structure failing here is an engine bug, not a search result.
  void verify_model(const Structure& s) const {
    for (const auto& inst : list_axiom_instances(config_, family_, s)) {
      if (!inst.evaluable) continue;
      if (!instance_holds(s, inst, config_, family_, opt_.check))
        throw std::logic_error("accepted structure fails " + inst.schemaId + ": " + serialize(s));
    }
  }

  SystemConfig config_;
  const PreparedFamily& family_;
  SearchOptions opt_;
  std::vector<FormulaPtr> binFamily_;
  std::vector<std::string> memberVar_;
  std::vector<char> stratFlag_;
  std::string comprehensionId_, fa4Id_, ncId_;
  bool ea2_ = false, ea9_ = false, knou_ = false, anyStrat_ = false;
};

EnumConstraints effective_constraints(const SystemConfig& config, const SearchOptions& opt) {
  EnumConstraints cons = opt.constraints;
  if (config.philosophy == Philosophy::B) cons.quotientB = true;
  return cons;
}

}  // namespace

void for_each_structure(int n, const EnumConstraints& constraints,
                        const std::function<bool(const Structure&)>& fn) {
  check_size(n);
  const uint64_t relCount = uint64_t(1) << (n * n);
  const uint32_t labCount = uint32_t(1) << n;
  for (uint64_t rel = 0; rel < relCount; ++rel)
    for (uint32_t lab = 0; lab < labCount; ++lab) {
      Structure s = decode_structure(n, rel, lab);
      if (!passes_constraints(s, constraints)) continue;
      if (!fn(s)) return;
    }
}

std::vector<Structure> enumerate_structures(int n, const EnumConstraints& constraints) {
  std::vector<Structure> out;
  for_each_structure(n, constraints, [&](const Structure& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

Verdict find_models(const SystemConfig& config, int n, const PreparedFamily& family,
                    const SearchOptions& opt) {
  check_size(n);
  Engine eng(config, family, opt);
  const EnumConstraints cons = effective_constraints(config, opt);

  const uint64_t relCount = uint64_t(1) << (n * n);
  const uint32_t labCount = uint32_t(1) << n;
  int workers = std::clamp(opt.workers, 1, 64);
  workers = static_cast<int>(std::min<uint64_t>(static_cast<uint64_t>(workers), relCount));

  std::vector<Partial> parts(static_cast<size_t>(workers));
  auto runRange = [&](uint64_t lo, uint64_t hi, Partial& part) {
    try {
      Scratch sc;
      Violation viol;
      for (uint64_t rel = lo; rel < hi; ++rel)
        for (uint32_t lab = 0; lab < labCount; ++lab) {
          Structure s = decode_structure(n, rel, lab);
          if (!passes_constraints(s, cons)) continue;
          part.candidates++;
          if (eng.check(s, sc, viol)) {
            part.modelCount++;
            if (opt.witnessCap == 0 || part.witnesses.size() < static_cast<size_t>(opt.witnessCap))
              part.witnesses.push_back(s);
          } else {
            part.violationCounts[viol.schemaId]++;
            if (part.sampleViolations.size() < static_cast<size_t>(opt.violationSampleCap))
              part.sampleViolations.push_back(viol);
          }
        }
    } catch (...) {
      part.error = std::current_exception();
    }
  };

  if (workers == 1) {
    runRange(0, relCount, parts[0]);
  } else {
    std::vector<std::thread> threads;
    const uint64_t chunk = relCount / static_cast<uint64_t>(workers);
    const uint64_t rem = relCount % static_cast<uint64_t>(workers);
    uint64_t lo = 0;
    for (int w = 0; w < workers; ++w) {
      uint64_t hi = lo + chunk + (static_cast<uint64_t>(w) < rem ? 1 : 0);
      threads.emplace_back(runRange, lo, hi, std::ref(parts[static_cast<size_t>(w)]));
      lo = hi;
    }
    for (auto& t : threads) t.join();
  }

  for (const auto& part : parts)
    if (part.error) std::rethrow_exception(part.error);

  Verdict v;
  v.config = eng.config();
  v.size = n;
  for (const auto& part : parts) {
    v.candidates += part.candidates;
    v.modelCount += part.modelCount;
    for (const auto& w : part.witnesses) {
      if (opt.witnessCap != 0 && v.witnesses.size() >= static_cast<size_t>(opt.witnessCap)) break;
      v.witnesses.push_back(w);
    }
    for (const auto& [id, count] : part.violationCounts) v.violationCounts[id] += count;
    for (const auto& sample : part.sampleViolations) {
      if (v.sampleViolations.size() >= static_cast<size_t>(opt.violationSampleCap)) break;
      v.sampleViolations.push_back(sample);
    }
  }
  bool atDesignated = config.atTarget == ConstTag::US && cons.designateUS;
  v.notEvaluated = not_evaluated_entries(config, false, atDesignated);
  return v;
}

void for_each_model(const SystemConfig& config, int n, const PreparedFamily& family,
                    const SearchOptions& opt, const std::function<bool(const Structure&)>& fn) {
  check_size(n);
  Engine eng(config, family, opt);
  const EnumConstraints cons = effective_constraints(config, opt);
  const uint64_t relCount = uint64_t(1) << (n * n);
  const uint32_t labCount = uint32_t(1) << n;
  Scratch sc;
  Violation viol;
  for (uint64_t rel = 0; rel < relCount; ++rel)
    for (uint32_t lab = 0; lab < labCount; ++lab) {
      Structure s = decode_structure(n, rel, lab);
      if (!passes_constraints(s, cons)) continue;
      if (eng.check(s, sc, viol) && !fn(s)) return;
    }
}

namespace {

struct Target {
  enum class Kind { False, Axiom, Formula } kind = Kind::False;
  std::string name;          // Axiom
  Fa4Variant fa4 = Fa4Variant::None;
  std::optional<Ea> ea;
  NcChoice nc;               // NC targets
  FormulaPtr formula;        // Formula
};

Target classify_target(const SystemConfig& config, const std::string& text) {
  Target t;
  t.name = text;
  if (text == "false") {
    t.kind = Target::Kind::False;
    return t;
  }
  t.kind = Target::Kind::Axiom;
  if (text == "EE" || text == "NEE" || text == "FA1" || text == "FA2" || text == "FA3") return t;
  if (text.rfind("FA4", 0) == 0) {
    std::string rest = text.substr(3);
    if (rest.empty()) {
      if (config.fa4 == Fa4Variant::None)
        throw ConfigError("target FA4 needs a variant, e.g. FA4beta");
      t.fa4 = config.fa4;
    } else {
      t.fa4 = fa4_from_string(rest);
      if (t.fa4 == Fa4Variant::None) throw ConfigError("target FA4 needs a concrete variant");
    }
    return t;
  }
  if (text == "NC-strat") {
    t.nc.stratified = true;
    return t;
  }
  if (text.rfind("NC", 0) == 0 && text.size() > 2 && std::isdigit(static_cast<unsigned char>(text[2]))) {
    std::string rest = text.substr(2);
    if (!rest.empty() && rest.back() == '\'') {
      t.nc.primed = true;
      rest.pop_back();
    }
    t.nc.number = std::stoi(rest);
    if (t.nc.number < 1 || t.nc.number > 16) throw ConfigError("NC target outside NC1..NC16");
    if (t.nc.primed && (t.nc.number < 5 || t.nc.number > 8))
      throw ConfigError("primed NC targets cover NC5'..NC8'");
    return t;
  }
  for (const char* name : {"EA1", "EA2", "EA3", "EA4", "EA5", "EA6", "EA7", "EA8", "EA9", "KNoU"})
    if (text == name) {
      t.ea = ea_from_string(text);
      return t;
    }

  t.kind = Target::Kind::Formula;
  t.formula = parse_formula(text);
  if (!free_vars(*t.formula).empty())
    throw ConfigError("consequence target formula must be closed: " + text);
  return t;
}

bool target_holds(const Structure& s, const SystemConfig& config, const PreparedFamily& family,
                  const CheckOptions& check, const Target& t) {
  switch (t.kind) {
    case Target::Kind::False: return false;
    case Target::Kind::Formula: return eval(s, config.philosophy, {}, *t.formula);
    case Target::Kind::Axiom: break;
  }
  if (t.name == "EE") return ee_holds(s);
  if (t.name == "NEE") return nee_holds(s, config.philosophy);
  if (t.name == "FA1") return s.designation(ConstTag::OM) ? fa1_holds(s) : true;
  if (t.name == "FA2") {
    for (int e = 0; e < s.n; ++e)
      if (!fa2_holds_at(s, e, config, check)) return false;
    return true;
  }
  if (t.name == "FA3") {
    for (int e = 0; e < s.n; ++e)
      if (!fa3_holds_at(s, e, config, check)) return false;
    return true;
  }
  if (t.fa4 != Fa4Variant::None) {
    SystemConfig probe = config;
    probe.fa4 = t.fa4;
    for (const auto& A : binary_family(probe)) {
      auto rows = binary_relation(s, probe.philosophy, *A);
      if (!functional_on(s, rows)) continue;
      for (int e = 0; e < s.n; ++e)
        if (!fa4_holds_at(s, e, rows, probe, check)) return false;
    }
    return true;
  }
  if (t.ea) return ea_holds(s, *t.ea, config, family, check);
  SystemConfig probe = config;
  probe.nc = t.nc;
  return nc_axiom_holds(s, probe, check, &family);
}

}  // namespace

ConsequenceResult consequence_check(const SystemConfig& config, const std::string& target,
                                    int nMax, const SearchOptions& opt) {
  check_size(nMax);
  validate(config);
  Target t = classify_target(config, target);
  PreparedFamily family = prepare_family(config);

  ConsequenceResult res;
  res.target = target;
  for (int n = 1; n <= nMax && res.holdsInAllModels; ++n) {
    for_each_model(config, n, family, opt, [&](const Structure& s) {
      res.vacuous = false;
      res.modelsChecked++;
      if (!target_holds(s, config, family, opt.check, t)) {
        res.holdsInAllModels = false;
        res.counterexample = s;
        return false;
      }
      return true;
    });
  }
  return res;
}

PathologyReport pathology_probe(const SystemConfig& config, int n, const PreparedFamily& family,
                                const SearchOptions& opt) {
  PathologyReport rep;
  const std::string ruKey =
      to_text(*mk_builder("x", neg(member_of(mk_var("x"), mk_var("x")))));
  const SemOptions sem = sem_options(config, opt.check);

  for_each_model(config, n, family, opt, [&](const Structure& s) {
    rep.models++;
    auto it = s.denotations.find(ruKey);
    if (it != s.denotations.end()) {
      rep.ruDenoted++;
      int ru = it->second;
      if (s.member(ru, ru)) rep.ruInRu++;
      if (s.is_normal(ru)) rep.ruNormal++;
    }
    ElemSet slimExt = 0, heredExt = 0;
    for (int e = 0; e < s.n; ++e) {
      if (structural_predicate(s, StructPred::Slim, e, sem)) slimExt |= ElemSet(1) << e;
      ElemSet h = hull(s, e, sem.hullMode);
      bool allSlim = true;
      for (int d = 0; d < s.n && allSlim; ++d)
        if (((h >> d) & 1u) && !structural_predicate(s, StructPred::Slim, d, sem)) allSlim = false;
      if (allSlim) heredExt |= ElemSet(1) << e;
    }
    if (auto el = find_by_ext(s, slimExt)) {
      rep.slimMaterialized++;
      if (s.member(*el, *el)) rep.slimInSlim++;
      if (s.is_normal(*el)) rep.slimNormal++;
    }
    if (auto el = find_by_ext(s, heredExt)) {
      rep.heredSlimMaterialized++;
      if (s.member(*el, *el)) rep.heredSlimInSelf++;
      if (s.is_normal(*el)) rep.heredSlimNormal++;
    }
    return true;
  });
  return rep;
}

}  // namespace nam
