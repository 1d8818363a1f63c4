#include "nam/report.hpp"

#include <algorithm>
#include <chrono>

#include "nam/errors.hpp"
#include "nam/family.hpp"
#include "nam/parse.hpp"

namespace nam {

namespace {

void expect_keys(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end())
      throw ConfigError(std::string("unknown key '") + key + "' in " + where);
  }
}

ProbeVariant probe_variant_of(Comprehension c) {
  switch (c) {
    case Comprehension::RaBaDi: return ProbeVariant::RaBaDi;
    case Comprehension::RinoBaCo: return ProbeVariant::RinoBaCo;
    case Comprehension::NoBI: return ProbeVariant::NoBI;
    case Comprehension::NoBE: return ProbeVariant::NoBE;
  }
  throw ConfigError("unknown comprehension variant");
}

}  // namespace

Json config_to_json(const SystemConfig& config) {
  Json j;
  j["name"] = config.name;
  j["comprehension"] = to_string(config.comprehension);
  j["philosophy"] = to_string(config.philosophy);
  j["extensionality"] = to_string(config.extensionality);
  j["fa1"] = config.fa1;
  j["fa2"] = config.fa2;
  j["fa3"] = config.fa3;
  j["fa4"] = to_string(config.fa4);
  j["dropNormalY"] = config.dropNormalY;
  Json eas = Json::array();
  for (Ea ea : config.eventualities) eas.push_back(to_string(ea));
  j["eventualities"] = eas;
  j["nc"] = Json{{"number", config.nc.number},
                 {"stratified", config.nc.stratified},
                 {"primed", config.nc.primed}};
  j["atTarget"] = to_string(config.atTarget);
  j["familyDepth"] = config.familyDepth;
  j["powersetNormalOnly"] = config.powersetNormalOnly;
  j["recordBa4"] = config.recordBa4;
  j["extraNotEvaluated"] = config.extraNotEvaluated;
  return j;
}

SystemConfig config_from_json(const Json& j) {
  if (j.is_string()) return preset(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("config must be a preset name or an object");
  expect_keys(j,
              {"name", "comprehension", "philosophy", "extensionality", "fa1", "fa2", "fa3", "fa4",
               "dropNormalY", "eventualities", "nc", "atTarget", "familyDepth",
               "powersetNormalOnly", "recordBa4", "extraNotEvaluated"},
              "config");
  SystemConfig c;
  if (j.contains("name")) c.name = j.at("name").get<std::string>();
  if (j.contains("comprehension"))
    c.comprehension = comprehension_from_string(j.at("comprehension").get<std::string>());
  if (j.contains("philosophy"))
    c.philosophy = philosophy_from_string(j.at("philosophy").get<std::string>());
  if (j.contains("extensionality"))
    c.extensionality = extensionality_from_string(j.at("extensionality").get<std::string>());
  if (j.contains("fa1")) c.fa1 = j.at("fa1").get<bool>();
  if (j.contains("fa2")) c.fa2 = j.at("fa2").get<bool>();
  if (j.contains("fa3")) c.fa3 = j.at("fa3").get<bool>();
  if (j.contains("fa4")) c.fa4 = fa4_from_string(j.at("fa4").get<std::string>());
  if (j.contains("dropNormalY")) c.dropNormalY = j.at("dropNormalY").get<bool>();
  if (j.contains("eventualities")) {
    c.eventualities.clear();
    for (const auto& item : j.at("eventualities"))
      c.eventualities.push_back(ea_from_string(item.get<std::string>()));
    std::sort(c.eventualities.begin(), c.eventualities.end());
    c.eventualities.erase(std::unique(c.eventualities.begin(), c.eventualities.end()),
                          c.eventualities.end());
  }
  if (j.contains("nc")) {
    const Json& nc = j.at("nc");
    expect_keys(nc, {"number", "stratified", "primed"}, "nc");
    if (nc.contains("number")) c.nc.number = nc.at("number").get<int>();
    if (nc.contains("stratified")) c.nc.stratified = nc.at("stratified").get<bool>();
    if (nc.contains("primed")) c.nc.primed = nc.at("primed").get<bool>();
  }
  if (j.contains("atTarget")) c.atTarget = const_tag_from_string(j.at("atTarget").get<std::string>());
  if (j.contains("familyDepth")) c.familyDepth = j.at("familyDepth").get<int>();
  if (j.contains("powersetNormalOnly"))
    c.powersetNormalOnly = j.at("powersetNormalOnly").get<bool>();
  if (j.contains("recordBa4")) c.recordBa4 = j.at("recordBa4").get<bool>();
  if (j.contains("extraNotEvaluated"))
    c.extraNotEvaluated = j.at("extraNotEvaluated").get<std::vector<std::string>>();
  if (c.familyDepth > kMaxFamilyDepth)
    throw CapError("familyDepth " + std::to_string(c.familyDepth) + " exceeds cap " +
                   std::to_string(kMaxFamilyDepth));
  validate(c);
  return c;
}

ExperimentSpec parse_experiment_spec(const Json& j) {
  if (!j.is_object()) throw ConfigError("experiment spec must be a JSON object");
  expect_keys(j, {"experiments", "outputPath", "witnessCap"}, "spec");
  ExperimentSpec spec;
  if (!j.contains("experiments") || !j.at("experiments").is_array() ||
      j.at("experiments").empty())
    throw ConfigError("spec needs a non-empty 'experiments' array");
  for (const auto& je : j.at("experiments")) {
    expect_keys(je, {"config", "sizes", "familyDepth", "probes", "consequenceTargets"},
                "experiment");
    Experiment ex;
    if (!je.contains("config")) throw ConfigError("experiment needs a 'config'");
    ex.config = config_from_json(je.at("config"));
    if (je.contains("familyDepth")) {
      ex.config.familyDepth = je.at("familyDepth").get<int>();
      if (ex.config.familyDepth > kMaxFamilyDepth)
        throw CapError("familyDepth " + std::to_string(ex.config.familyDepth) + " exceeds cap " +
                       std::to_string(kMaxFamilyDepth));
      validate(ex.config);
    }
    if (!je.contains("sizes") || !je.at("sizes").is_array() || je.at("sizes").empty())
      throw ConfigError("experiment needs a non-empty 'sizes' array");
    for (const auto& sz : je.at("sizes")) {
      int n = sz.get<int>();
      if (n < 1) throw ConfigError("sizes must be positive");
      if (n > kMaxN)
        throw CapError("size " + std::to_string(n) + " exceeds cap " + std::to_string(kMaxN));
      ex.sizes.push_back(n);
    }
    if (je.contains("probes"))
      ex.probes = je.at("probes").get<std::vector<std::string>>();
    if (je.contains("consequenceTargets"))
      ex.consequenceTargets = je.at("consequenceTargets").get<std::vector<std::string>>();
    spec.experiments.push_back(std::move(ex));
  }
  if (j.contains("outputPath")) spec.outputPath = j.at("outputPath").get<std::string>();
  if (j.contains("witnessCap")) {
    spec.witnessCap = j.at("witnessCap").get<int>();
    if (spec.witnessCap < 0) throw ConfigError("witnessCap must be >= 0");
  }
  return spec;
}

Json spec_to_json(const ExperimentSpec& spec) {
  Json j;
  Json exps = Json::array();
  for (const auto& ex : spec.experiments) {
    Json je;
    je["config"] = config_to_json(ex.config);
    je["sizes"] = ex.sizes;
    je["probes"] = ex.probes;
    je["consequenceTargets"] = ex.consequenceTargets;
    exps.push_back(je);
  }
  j["experiments"] = exps;
  j["outputPath"] = spec.outputPath;
  j["witnessCap"] = spec.witnessCap;
  return j;
}

Json probe_to_json(const ProbeResult& r) {
  Json j;
  j["variant"] = to_string(r.variant);
  j["body"] = r.body;
  j["status"] = r.contradiction ? "CONTRADICTION" : "CONSISTENT";
  j["forced"] = Json{{"t in t", to_string(r.selfMembership)}, {"N(t)", to_string(r.normality)}};
  return j;
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["config"] = config_to_json(v.config);
  j["size"] = v.size;
  j["candidates"] = v.candidates;
  j["modelCount"] = v.modelCount;
  Json wits = Json::array();
  for (const auto& w : v.witnesses) wits.push_back(serialize(w));
  j["witnesses"] = wits;
  Json counts = Json::object();
  for (const auto& [id, count] : v.violationCounts) counts[id] = count;
  j["violationCounts"] = counts;
  Json samples = Json::array();
  for (const auto& sv : v.sampleViolations)
    samples.push_back(Json{{"schemaId", sv.schemaId},
                           {"element", sv.element},
                           {"formula", sv.formula},
                           {"structure", sv.structure}});
  j["sampleViolations"] = samples;
  j["notEvaluated"] = v.notEvaluated;
  return j;
}

Json consequence_to_json(const ConsequenceResult& r) {
  Json j;
  j["target"] = r.target;
  j["holdsInAllModels"] = r.holdsInAllModels;
  j["vacuous"] = r.vacuous;
  j["modelsChecked"] = r.modelsChecked;
  j["counterexample"] = r.counterexample ? Json(serialize(*r.counterexample)) : Json(nullptr);
  return j;
}

Json run_matrix(const ExperimentSpec& spec, const RunOptions& opt) {
  Json report;
  report["version"] = kToolVersion;
  report["spec"] = spec_to_json(spec);
  Json cells = Json::array();
  for (const auto& ex : spec.experiments) {
    PreparedFamily family = prepare_family(ex.config);
    Json probes = Json::array();
    for (const auto& body : ex.probes)
      probes.push_back(probe_to_json(
          self_instantiation_probe(probe_variant_of(ex.config.comprehension), parse_formula(body))));
    for (int n : ex.sizes) {
      SearchOptions sopt;
      sopt.check = opt.check;
      sopt.workers = opt.workers;
      sopt.witnessCap = spec.witnessCap;
      auto t0 = std::chrono::steady_clock::now();
      Verdict v = find_models(ex.config, n, family, sopt);
      Json consequences = Json::array();
      for (const auto& target : ex.consequenceTargets)
        consequences.push_back(consequence_to_json(consequence_check(ex.config, target, n, sopt)));
      auto t1 = std::chrono::steady_clock::now();

      Json cell;
      cell["config"] = config_to_json(ex.config);
      cell["size"] = n;
      cell["modelCount"] = v.modelCount;
      Json wits = Json::array();
      for (const auto& w : v.witnesses) wits.push_back(serialize(w));
      cell["witnesses"] = wits;
      cell["notEvaluated"] = v.notEvaluated;
      cell["probes"] = probes;
      if (!ex.consequenceTargets.empty()) cell["consequences"] = consequences;
      cell["elapsedMs"] =
          opt.timings
              ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
              : 0;
      cells.push_back(cell);
    }
  }
  report["cells"] = cells;
  return report;
}

}  // namespace nam
