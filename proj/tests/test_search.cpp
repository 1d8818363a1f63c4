#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nam/errors.hpp"
#include "nam/parse.hpp"
#include "nam/probe.hpp"
#include "nam/search.hpp"
#include "nam/semantics.hpp"
#include "nam/structure.hpp"
#include "nam/transform.hpp"

using namespace nam;

namespace {

FormulaPtr F(const std::string& text) { return parse_formula(text); }

SystemConfig kernel(Comprehension c) {
  SystemConfig cfg;
  cfg.comprehension = c;
  cfg.familyDepth = 0;
  return cfg;
}

uint64_t count_structures(int n, const EnumConstraints& cons) {
  uint64_t count = 0;
  for_each_structure(n, cons, [&](const Structure&) {
    ++count;
    return true;
  });
  return count;
}

// Reference acceptance: a structure is a model when SOME total denotation map
// satisfies every axiom through the generic evaluators. No pruning, no units.
bool oracle_accepts(const SystemConfig& config, const PreparedFamily& fam, const Structure& base,
                    const CheckOptions& opt) {
  const size_t M = fam.members.size();
  std::vector<SchemaInstance> comp;
  comp.reserve(M);
  for (const auto& m : fam.members)
    comp.push_back(comprehension_instance(config.comprehension, m));

  std::vector<int> pick(M, 0);
  while (true) {
    Structure s = base;
    for (size_t i = 0; i < M; ++i) s.denotations[fam.builderKeys[i]] = pick[i];

    bool ok = true;
    for (size_t i = 0; i < M && ok; ++i)
      ok = eval(s, config.philosophy, {}, *comp[i].formula);
    if (ok && config.extensionality == Extensionality::EE) ok = ee_holds(s);
    if (ok && config.extensionality == Extensionality::NEE) ok = nee_holds(s, config.philosophy);
    if (ok && config.fa1 && s.designation(ConstTag::OM)) ok = fa1_holds(s);
    for (int e = 0; e < s.n && ok; ++e) {
      if (config.fa2) ok = ok && fa2_holds_at(s, e, config, opt);
      if (config.fa3) ok = ok && fa3_holds_at(s, e, config, opt);
    }
    if (ok && config.fa4 != Fa4Variant::None) {
      for (const auto& A : binary_family(config)) {
        auto rows = binary_relation(s, config.philosophy, *A);
        if (!functional_on(s, rows)) continue;
        for (int e = 0; e < s.n && ok; ++e) ok = fa4_holds_at(s, e, rows, config, opt);
        if (!ok) break;
      }
    }
    for (Ea ea : config.eventualities)
      if (ok) ok = ea_holds(s, ea, config, fam, opt);
    if (ok) ok = nc_axiom_holds(s, config, opt, &fam);
    if (ok) return true;

    size_t i = 0;
    while (i < M && ++pick[i] == base.n) pick[i++] = 0;
    if (i == M) return false;
  }
}

std::vector<std::string> model_keys(const SystemConfig& config, int n, const PreparedFamily& fam,
                                    const SearchOptions& opt = {}) {
  std::vector<std::string> keys;
  for_each_model(config, n, fam, opt, [&](const Structure& s) {
    keys.push_back(serialize(s));
    return true;
  });
  return keys;
}

}  // namespace

TEST_CASE("structure enumeration: counts, order, constraints") {
  CHECK(enumerate_structures(1, {}).size() == 4);
  CHECK(count_structures(2, {}) == 64);
  CHECK(count_structures(3, {}) == 4096);

  EnumConstraints extOnly;
  extOnly.extensionalOnly = true;
  auto distinct = enumerate_structures(2, extOnly);
  CHECK(distinct.size() == 48);
  std::set<std::string> grids;
  for (const auto& s : distinct) {
    std::string line = serialize(s);
    grids.insert(line.substr(0, line.find(";N=")));
  }
  CHECK(grids.size() == 12);  // 48 structures over 12 distinct relation grids

  EnumConstraints qb;
  qb.quotientB = true;
  CHECK(count_structures(2, qb) == 56);  // duplicated extensions survive iff flags differ

  // serialized candidates stream in ascending string order, labels innermost
  auto all = enumerate_structures(2, {});
  std::vector<std::string> lines;
  for (const auto& s : all) lines.push_back(serialize(s));
  CHECK(std::is_sorted(lines.begin(), lines.end()));
  CHECK(lines.front() == "n=2;E=0000;N=00;des=US:-,OM:-,AT:-;den=");
  CHECK(lines[1] == "n=2;E=0000;N=01;des=US:-,OM:-,AT:-;den=");
  CHECK(lines.back() == "n=2;E=1111;N=11;des=US:-,OM:-,AT:-;den=");

  // the universal-set constraint designates the lowest full column
  EnumConstraints us;
  us.designateUS = true;
  auto designated = enumerate_structures(2, us);
  CHECK(designated.size() == 28);
  for (const auto& s : designated) {
    auto d = s.designation(ConstTag::US);
    REQUIRE(d.has_value());
    CHECK(ext(s, *d) == s.universe());
    for (int e = 0; e < *d; ++e) CHECK(ext(s, e) != s.universe());
  }
  CHECK(enumerate_structures(1, us).size() == 2);

  CHECK_THROWS_AS(count_structures(0, {}), CapError);
  CHECK_THROWS_AS(count_structures(kMaxN + 1, {}), CapError);
}

TEST_CASE("the engine agrees with unpruned assignment search") {
  CheckOptions opt;
  SearchOptions sopt;
  sopt.witnessCap = 0;

  auto runBoth = [&](SystemConfig config, std::vector<std::string> bodies, int n) {
    std::vector<FormulaPtr> members;
    for (const auto& b : bodies) members.push_back(F(b));
    auto fam = prepare_family_from(config, std::move(members));

    std::set<std::string> engine;
    for_each_model(config, n, fam, sopt, [&](const Structure& s) {
      Structure bare = s;
      bare.denotations.clear();
      engine.insert(serialize(bare));
      return true;
    });

    EnumConstraints cons;
    if (config.philosophy == Philosophy::B) cons.quotientB = true;
    std::set<std::string> reference;
    for_each_structure(n, cons, [&](const Structure& s) {
      if (oracle_accepts(config, fam, s, opt)) reference.insert(serialize(s));
      return true;
    });
    CHECK(engine == reference);
    return engine.size();
  };

  // the four shells on a mixed family
  for (auto c : {Comprehension::RaBaDi, Comprehension::RinoBaCo, Comprehension::NoBI,
                 Comprehension::NoBE}) {
    SystemConfig cfg = kernel(c);
    for (int n = 1; n <= 2; ++n) runBoth(cfg, {"~(x in x)", "T", "N(x)", "x in x"}, n);
  }

  // foundation-and-necessity configuration
  SystemConfig fortified = kernel(Comprehension::RaBaDi);
  fortified.fa1 = fortified.fa2 = fortified.fa3 = true;
  fortified.fa4 = Fa4Variant::Alfa;
  fortified.nc.number = 1;
  for (int n = 1; n <= 2; ++n) runBoth(fortified, {"~(x in x)", "T"}, n);

  // eventualities that couple the denotation table
  SystemConfig coupled = kernel(Comprehension::RaBaDi);
  coupled.extensionality = Extensionality::None;
  coupled.eventualities = {Ea::EA2, Ea::EA3, Ea::EA9};
  for (int n = 1; n <= 2; ++n) runBoth(coupled, {"x in x", "N(x)"}, n);

  // defined equality with the forced quotient, restricted antecedent
  SystemConfig defined = kernel(Comprehension::NoBI);
  defined.philosophy = Philosophy::B;
  defined.extensionality = Extensionality::NEE;
  for (int n = 1; n <= 2; ++n) runBoth(defined, {"~(x in x)", "N(x)"}, n);

  // stratified necessity with supplement pairs in play
  SystemConfig strat = kernel(Comprehension::RaBaDi);
  strat.nc.stratified = true;
  strat.eventualities = {Ea::EA9};
  for (int n = 1; n <= 2; ++n) runBoth(strat, {"x in x", "E y. x in y"}, n);

  // one deeper sweep on the plainest kernel
  runBoth(kernel(Comprehension::NoBE), {"~(x in x)", "N(x)"}, 3);
}

TEST_CASE("search results: attribution, witnesses, bookkeeping") {
  SystemConfig cfg = preset("NAM0a");
  auto fam = prepare_family(cfg);

  Verdict v = find_models(cfg, 1, fam);
  CHECK(v.size == 1);
  CHECK(v.candidates == 4);
  CHECK(v.modelCount == 1);
  REQUIRE(v.witnesses.size() == 1);
  const Structure& w = v.witnesses[0];
  CHECK(w.n == 1);
  CHECK(ext(w, 0) == 0b1);
  CHECK_FALSE(w.is_normal(0));
  CHECK(w.denotations.size() == fam.members.size());
  for (const auto& [key, elem] : w.denotations) CHECK(elem == 0);
  CHECK(v.violationCounts == std::map<std::string, uint64_t>{{"raBaDi-CoS", 3}});
  REQUIRE_FALSE(v.sampleViolations.empty());
  CHECK(v.sampleViolations[0].schemaId == "raBaDi-CoS");
  CHECK_FALSE(v.sampleViolations[0].formula.empty());
  CHECK(v.notEvaluated == std::vector<std::string>{"BA4c"});

  // counts split exactly into models and attributed rejections
  Verdict v2 = find_models(cfg, 2, fam);
  uint64_t rejected = 0;
  for (const auto& [id, count] : v2.violationCounts) rejected += count;
  CHECK(v2.candidates == v2.modelCount + rejected);
  CHECK(v2.candidates == 64);
  CHECK(v2.modelCount == 12);

  // NAM1a reports the undesignated limit element alongside the choice axiom
  SystemConfig nam1a = preset("NAM1a");
  auto fam1a = prepare_family(nam1a);
  CHECK(find_models(nam1a, 1, fam1a).notEvaluated ==
        std::vector<std::string>{"BA4c", "FA1"});

  // witness capping: 0 keeps all, small caps truncate the prefix
  SearchOptions capAll;
  capAll.witnessCap = 0;
  Verdict whole = find_models(cfg, 2, fam, capAll);
  CHECK(whole.witnesses.size() == 12);
  std::vector<std::string> order;
  for (const auto& m : whole.witnesses) {
    Structure bare = m;
    bare.denotations.clear();
    order.push_back(serialize(bare));
  }
  CHECK(std::is_sorted(order.begin(), order.end()));

  SearchOptions capTwo;
  capTwo.witnessCap = 2;
  Verdict two = find_models(cfg, 2, fam, capTwo);
  CHECK(two.witnesses.size() == 2);
  CHECK(two.modelCount == 12);
  CHECK(serialize(two.witnesses[0]) == serialize(whole.witnesses[0]));

  CHECK_THROWS_AS(find_models(cfg, 0, fam), CapError);
  CHECK_THROWS_AS(find_models(cfg, kMaxN + 1, fam), CapError);
}

TEST_CASE("worker splits change nothing") {
  SystemConfig cfg = preset("NAM1a");
  auto fam = prepare_family(cfg);
  SearchOptions base;
  base.witnessCap = 0;
  Verdict one = find_models(cfg, 2, fam, base);
  CHECK(one.modelCount == 10);

  for (int workers : {2, 3, 8, 64}) {
    SearchOptions opt = base;
    opt.workers = workers;
    Verdict v = find_models(cfg, 2, fam, opt);
    CHECK(v.modelCount == one.modelCount);
    CHECK(v.candidates == one.candidates);
    CHECK(v.violationCounts == one.violationCounts);
    REQUIRE(v.witnesses.size() == one.witnesses.size());
    for (size_t i = 0; i < v.witnesses.size(); ++i)
      CHECK(serialize(v.witnesses[i]) == serialize(one.witnesses[i]));
  }

  // and reruns are byte-stable
  Verdict again = find_models(cfg, 2, fam, base);
  CHECK(again.modelCount == one.modelCount);
  CHECK(again.violationCounts == one.violationCounts);
  for (size_t i = 0; i < again.witnesses.size(); ++i)
    CHECK(serialize(again.witnesses[i]) == serialize(one.witnesses[i]));
}

TEST_CASE("preset model counts at the first three sizes") {
  struct Row {
    const char* name;
    uint64_t counts[3];
  };
  const Row rows[] = {
      {"NAM0a", {1, 12, 504}},    {"NAM0b", {1, 12, 504}},  {"NAM0c", {2, 36, 2352}},
      {"NAM1a", {1, 10, 234}},    {"NAM1b", {0, 0, 0}},     {"NAM1c", {1, 14, 510}},
      {"NAM2a", {1, 10, 234}},    {"NAM2b", {0, 0, 0}},     {"NAM2c", {1, 14, 510}},
      {"NAM1aKNoU", {1, 10, 216}},{"NAM2cKN", {1, 10, 354}},{"NAM-ZF", {1, 12, 396}}};
  for (const auto& row : rows) {
    SystemConfig cfg = preset(row.name);
    auto fam = prepare_family(cfg);
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(row.name);
      CAPTURE(n);
      CHECK(find_models(cfg, n, fam).modelCount == row.counts[n - 1]);
    }
  }
}

TEST_CASE("adding axioms never adds models") {
  SystemConfig base = preset("NAM0a");
  SystemConfig mid = base;
  mid.nc.number = 1;
  SystemConfig top = preset("NAM1a");
  auto famB = prepare_family(base);
  auto famM = prepare_family(mid);
  auto famT = prepare_family(top);
  for (int n = 1; n <= 3; ++n) {
    uint64_t a = find_models(base, n, famB).modelCount;
    uint64_t b = find_models(mid, n, famM).modelCount;
    uint64_t c = find_models(top, n, famT).modelCount;
    CHECK(a >= b);
    CHECK(b >= c);
  }

  // the middle layer is strict at n = 2: the necessity condition bites
  CHECK(find_models(base, 2, famB).modelCount > find_models(top, 2, famT).modelCount);
}

TEST_CASE("probe verdicts hold inside every search model") {
  // For the one-way shells the probe formula is exactly the y := t instance of
  // the axiom, so its forced values are necessary in every model. The two-way
  // shell is excluded: its "pointwise agreement implies Normal" half quantifies
  // over all y, and the diagonal projection of that converse over-claims.
  const char* bodies[] = {"T", "F", "x in x", "x = x", "N(x)", "~(x in x)"};
  const Comprehension comps[] = {Comprehension::RaBaDi, Comprehension::RinoBaCo,
                                 Comprehension::NoBI};
  const ProbeVariant probes[] = {ProbeVariant::RaBaDi, ProbeVariant::RinoBaCo, ProbeVariant::NoBI};
  for (size_t c = 0; c < 3; ++c) {
    for (const char* body : bodies) {
      auto r = self_instantiation_probe(probes[c], F(body));
      SystemConfig cfg = kernel(comps[c]);
      auto fam = prepare_family_from(cfg, {F(body)});
      std::string key = fam.builderKeys[0];
      uint64_t models = 0;
      for (int n = 1; n <= 2; ++n)
        for_each_model(cfg, n, fam, {}, [&](const Structure& s) {
          ++models;
          int t = s.denotations.at(key);
          if (r.selfMembership == ForcedValue::True) CHECK(s.member(t, t));
          if (r.selfMembership == ForcedValue::False) CHECK_FALSE(s.member(t, t));
          if (r.normality == ForcedValue::True) CHECK(s.is_normal(t));
          if (r.normality == ForcedValue::False) CHECK_FALSE(s.is_normal(t));
          return true;
        });
      if (r.contradiction) CHECK(models == 0);
    }
  }

  // the conditional-shell diagonal stays genuinely free across models
  SystemConfig noBE = kernel(Comprehension::NoBE);
  auto fam = prepare_family_from(noBE, {F("~(x in x)")});
  std::set<bool> seen;
  for (int n = 1; n <= 2; ++n)
    for_each_model(noBE, n, fam, {}, [&](const Structure& s) {
      int t = s.denotations.at(fam.builderKeys[0]);
      seen.insert(s.member(t, t));
      CHECK_FALSE(s.is_normal(t));
      return true;
    });
  CHECK(seen == std::set<bool>{false, true});

  // witness for the exclusion above: the two-way shell pins N(t) for the
  // diagonal body, yet a model can satisfy the axiom with an abnormal
  // denotation by disagreeing away from the diagonal
  auto claim = self_instantiation_probe(ProbeVariant::NoBE, F("x in x"));
  CHECK(claim.normality == ForcedValue::True);
  auto famQ = prepare_family_from(noBE, {F("x in x")});
  bool abnormalSeen = false;
  for_each_model(noBE, 2, famQ, {}, [&](const Structure& s) {
    if (!s.is_normal(s.denotations.at(famQ.builderKeys[0]))) abnormalSeen = true;
    return true;
  });
  CHECK(abnormalSeen);
}

TEST_CASE("denotation coupling inside the engine") {
  // equal truth sets share one denotation; the eventuality rejects nothing
  SystemConfig plain = kernel(Comprehension::RaBaDi);
  plain.extensionality = Extensionality::None;
  SystemConfig ea2 = plain;
  ea2.eventualities = {Ea::EA2};
  auto famP = prepare_family_from(plain, {F("T"), F("x = x")});
  auto famE = prepare_family_from(ea2, {F("T"), F("x = x")});
  for (int n = 1; n <= 2; ++n) {
    auto a = model_keys(plain, n, famP);
    auto b = model_keys(ea2, n, famE);
    CHECK(a.size() == b.size());
    for_each_model(ea2, n, famE, {}, [&](const Structure& s) {
      CHECK(s.denotations.at("{x | T}") == s.denotations.at("{x | (x = x)}"));
      return true;
    });
  }

  // a body and its supplement cannot both land on abnormal elements
  SystemConfig nine = kernel(Comprehension::RaBaDi);
  nine.extensionality = Extensionality::None;
  nine.eventualities = {Ea::EA9};
  auto famN = prepare_family_from(nine, {F("x in x")});
  Verdict v = find_models(nine, 1, famN);
  CHECK(v.modelCount == 0);
  CHECK(v.violationCounts ==
        std::map<std::string, uint64_t>{{"EA9", 1}, {"raBaDi-CoS", 3}});
  Verdict v2 = find_models(nine, 2, famN);
  CHECK(v2.modelCount > 0);
  for_each_model(nine, 2, famN, {}, [&](const Structure& s) {
    bool a = s.is_normal(s.denotations.at("{x | (x in x)}"));
    bool b = s.is_normal(s.denotations.at("{x | ~(x in x)}"));
    CHECK((a || b));
    return true;
  });

  // stratified members must denote Normal elements when possible
  SystemConfig strat = kernel(Comprehension::RaBaDi);
  strat.nc.stratified = true;
  auto famS = prepare_family_from(strat, {F("x in x"), F("E y. x in y")});
  Verdict vs = find_models(strat, 1, famS);
  CHECK(vs.modelCount == 2);
  CHECK(vs.violationCounts ==
        std::map<std::string, uint64_t>{{"NC-strat", 1}, {"raBaDi-CoS", 1}});
  for_each_model(strat, 1, famS, {}, [&](const Structure& s) {
    CHECK(s.is_normal(s.denotations.at("{x | E y. (x in y)}")));
    return true;
  });
}

TEST_CASE("philosophy B forces the labeled quotient") {
  SystemConfig cfg = kernel(Comprehension::NoBI);
  cfg.philosophy = Philosophy::B;
  cfg.extensionality = Extensionality::None;
  auto fam = prepare_family_from(cfg, {F("T")});
  CHECK(find_models(cfg, 2, fam).candidates == 56);
  SearchOptions opt;
  opt.constraints.quotientB = false;  // still forced
  CHECK(find_models(cfg, 2, fam, opt).candidates == 56);
}

TEST_CASE("finite consequence checking") {
  SystemConfig cfg = preset("NAM0a");

  // "false" finds the very first model and stops
  ConsequenceResult f = consequence_check(cfg, "false", 2);
  CHECK_FALSE(f.holdsInAllModels);
  CHECK_FALSE(f.vacuous);
  CHECK(f.modelsChecked == 1);
  REQUIRE(f.counterexample.has_value());
  CHECK(f.counterexample->n == 1);

  // a modelless system proves everything, flagged as vacuous
  ConsequenceResult vac = consequence_check(preset("NAM1b"), "false", 2);
  CHECK(vac.holdsInAllModels);
  CHECK(vac.vacuous);
  CHECK(vac.modelsChecked == 0);

  // the shared-denotation eventuality is already a consequence of the kernel
  ConsequenceResult ea2 = consequence_check(cfg, "EA2", 2);
  CHECK(ea2.holdsInAllModels);
  CHECK_FALSE(ea2.vacuous);
  CHECK(ea2.modelsChecked == 13);

  // closed formulas evaluate per model
  ConsequenceResult some = consequence_check(cfg, "E y. (y in y)", 2);
  CHECK(some.holdsInAllModels);
  CHECK_FALSE(some.vacuous);

  ConsequenceResult none = consequence_check(cfg, "A y. N(y)", 1);
  CHECK_FALSE(none.holdsInAllModels);
  REQUIRE(none.counterexample.has_value());

  CHECK_THROWS_AS(consequence_check(cfg, "y in y", 1), ConfigError);   // open formula
  CHECK_THROWS_AS(consequence_check(cfg, "NC17", 1), ConfigError);
  CHECK_THROWS_AS(consequence_check(cfg, "NC9'", 1), ConfigError);
  CHECK_THROWS_AS(consequence_check(cfg, "FA4", 1), ConfigError);      // no variant in play
  CHECK_THROWS_AS(consequence_check(cfg, "EA10", 1), ParseError);      // not an axiom, not a formula
  CHECK(consequence_check(cfg, "NC5'", 1).modelsChecked == 1);
  SystemConfig withFa4 = preset("NAM1a");
  CHECK(consequence_check(withFa4, "FA4", 1).holdsInAllModels);
}

TEST_CASE("pathology reports across the kernels") {
  SystemConfig a = preset("NAM0a");
  auto famA = prepare_family(a);
  PathologyReport ra = pathology_probe(a, 2, famA);
  CHECK(ra.models == 12);
  CHECK(ra.ruDenoted == 12);
  CHECK(ra.ruInRu == 12);   // the negative diagonal set always contains itself here
  CHECK(ra.ruNormal == 0);

  SystemConfig b = preset("NAM0b");
  auto famB = prepare_family(b);
  PathologyReport rb = pathology_probe(b, 2, famB);
  CHECK(rb.models == 12);
  CHECK(rb.ruDenoted == 12);
  CHECK(rb.ruInRu == 0);    // and here it never does
  CHECK(rb.ruNormal == 0);

  SystemConfig e = kernel(Comprehension::NoBE);
  auto famE = prepare_family_from(e, {F("~(x in x)")});
  PathologyReport re = pathology_probe(e, 1, famE);
  CHECK(re.models == 2);
  CHECK(re.ruInRu == 1);    // the two-way shell leaves the diagonal open
  CHECK(re.ruNormal == 0);
  CHECK(re.slimMaterialized <= re.models);
  CHECK(re.heredSlimMaterialized <= re.models);
}
