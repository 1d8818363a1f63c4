// namlab: finite-model laboratory for normality-conditioned comprehension systems.
// Subcommands: probe, matrix, eval, search, family.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nam/errors.hpp"
#include "nam/family.hpp"
#include "nam/parse.hpp"
#include "nam/probe.hpp"
#include "nam/report.hpp"
#include "nam/search.hpp"
#include "nam/semantics.hpp"
#include "nam/transform.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitContradiction = 2;
constexpr int kExitCap = 3;

struct CheckFlags {
  std::string hullMode = "downward";
  std::string nc5Mode = "disjunctive";
  bool requireClosure = false;
  bool strictFounded = false;

  nam::CheckOptions options() const {
    nam::CheckOptions check;
    check.hullMode = hullMode == "literal" ? nam::HullMode::Literal : nam::HullMode::Downward;
    check.nc5Bijection = nc5Mode == "bijection";
    check.requireClosure = requireClosure;
    check.strictFounded = strictFounded;
    return check;
  }
};

void add_check_flags(CLI::App* cmd, CheckFlags& flags) {
  cmd->add_option("--hull-mode", flags.hullMode, "Hull reading: downward or literal")
      ->check(CLI::IsMember({"downward", "literal"}));
  cmd->add_option("--nc5-mode", flags.nc5Mode, "NC5/NC7 antecedent: disjunctive or bijection")
      ->check(CLI::IsMember({"disjunctive", "bijection"}));
  cmd->add_flag("--require-closure", flags.requireClosure,
                "Missing operator materializations count as violations");
  cmd->add_flag("--strict-founded", flags.strictFounded,
                "Empty extensions count as unfounded");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nam::ConfigError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw nam::ConfigError("cannot write file: " + path);
  out << content;
}

int cmd_probe(const std::string& variant, const std::string& body) {
  nam::ProbeResult res =
      nam::self_instantiation_probe(nam::probe_variant_from_string(variant),
                                    nam::parse_formula(body));
  std::cout << "variant: " << nam::to_string(res.variant) << "\n";
  std::cout << "body: " << res.body << "\n";
  std::cout << "status: " << (res.contradiction ? "CONTRADICTION" : "CONSISTENT") << "\n";
  if (!res.contradiction) {
    std::cout << "t in t: " << nam::to_string(res.selfMembership) << "\n";
    std::cout << "N(t): " << nam::to_string(res.normality) << "\n";
  }
  return res.contradiction ? kExitContradiction : kExitOk;
}

int cmd_matrix(const std::string& specPath, const std::string& outOverride, int workers,
               bool timings, const CheckFlags& flags) {
  nam::Json specJson = nam::Json::parse(read_file(specPath));
  nam::ExperimentSpec spec = nam::parse_experiment_spec(specJson);
  nam::RunOptions opt;
  opt.check = flags.options();
  opt.workers = workers;
  opt.timings = timings;
  nam::Json report = nam::run_matrix(spec, opt);

  std::string outPath = !outOverride.empty() ? outOverride : spec.outputPath;
  write_output(outPath, report.dump(2) + "\n");

  std::cerr << "config size modelCount\n";
  for (const auto& cell : report.at("cells"))
    std::cerr << cell.at("config").at("name").get<std::string>() << " "
              << cell.at("size").get<int>() << " " << cell.at("modelCount").get<uint64_t>()
              << "\n";
  return kExitOk;
}

int cmd_eval(const std::string& structPath, const std::string& body,
             const std::string& philosophy) {
  nam::Structure s = nam::deserialize(read_file(structPath));
  nam::FormulaPtr f = nam::parse_formula(body);
  nam::Philosophy phil = nam::philosophy_from_string(philosophy);
  auto fv = nam::free_vars(*f);
  nam::Assignment env;
  if (fv.size() == 1) {
    auto at = s.designation(nam::ConstTag::AT);
    if (!at)
      throw nam::ConfigError("free variable '" + *fv.begin() +
                             "' needs an AT designation in the structure");
    env.emplace_back(*fv.begin(), *at);
  } else if (fv.size() > 1) {
    throw nam::ConfigError("formula has more than one free variable");
  }
  std::cout << (nam::eval(s, phil, env, *f) ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_search(const std::string& presetName, const std::string& configPath, int size, int depth,
               const std::string& philosophy, int nc, bool primed, bool stratified, int workers,
               int witnessCap, bool pathology, const std::string& outPath,
               const CheckFlags& flags) {
  nam::SystemConfig config;
  if (!configPath.empty())
    config = nam::config_from_json(nam::Json::parse(read_file(configPath)));
  else if (!presetName.empty())
    config = nam::preset(presetName);
  else
    throw nam::ConfigError("search needs --preset or --config");
  if (depth >= 0) config.familyDepth = depth;
  if (!philosophy.empty()) config.philosophy = nam::philosophy_from_string(philosophy);
  if (nc >= 0) {
    config.nc.number = nc;
    config.nc.stratified = false;
  }
  if (primed) config.nc.primed = true;
  if (stratified) {
    config.nc.stratified = true;
    config.nc.number = 0;
    config.nc.primed = false;
  }
  nam::validate(config);

  nam::SearchOptions opt;
  opt.check = flags.options();
  opt.workers = workers;
  opt.witnessCap = witnessCap;
  nam::PreparedFamily family = nam::prepare_family(config);
  nam::Verdict v = nam::find_models(config, size, family, opt);
  nam::Json out = nam::verdict_to_json(v);
  if (pathology) {
    nam::PathologyReport rep = nam::pathology_probe(config, size, family, opt);
    out["pathology"] = nam::Json{{"models", rep.models},
                                 {"ruDenoted", rep.ruDenoted},
                                 {"ruInRu", rep.ruInRu},
                                 {"ruNormal", rep.ruNormal},
                                 {"slimMaterialized", rep.slimMaterialized},
                                 {"slimInSlim", rep.slimInSlim},
                                 {"slimNormal", rep.slimNormal},
                                 {"heredSlimMaterialized", rep.heredSlimMaterialized},
                                 {"heredSlimInSelf", rep.heredSlimInSelf},
                                 {"heredSlimNormal", rep.heredSlimNormal}};
  }
  write_output(outPath, out.dump(2) + "\n");
  return kExitOk;
}

int cmd_family(int depth, bool constants) {
  nam::FormulaFamily fam = nam::enumerate_family(depth, constants);
  for (const auto& m : fam.members) std::cout << nam::to_text(*m) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-model laboratory for normality-conditioned set comprehension"};
  app.require_subcommand(1);

  auto* probe = app.add_subcommand("probe", "Propositional self-instantiation probe");
  std::string probeVariant, probeBody;
  probe->add_option("--variant", probeVariant, "naive, raBaDi, rinoBaCo, noBI, or noBE")
      ->required();
  probe->add_option("--body", probeBody, "Body formula A, at most one free variable")->required();

  auto* matrix = app.add_subcommand("matrix", "Run an experiment spec and write a report");
  std::string matrixSpec, matrixOut;
  int matrixWorkers = 1;
  bool matrixTimings = false;
  CheckFlags matrixFlags;
  matrix->add_option("spec", matrixSpec, "Experiment spec JSON file")->required();
  matrix->add_option("--out", matrixOut, "Report path (overrides the spec's outputPath)");
  matrix->add_option("--workers", matrixWorkers, "Worker threads per cell")
      ->check(CLI::Range(1, 64));
  matrix->add_flag("--timings", matrixTimings, "Record wall-clock per cell (non-reproducible)");
  add_check_flags(matrix, matrixFlags);

  auto* evalCmd = app.add_subcommand("eval", "Evaluate a formula on a serialized structure");
  std::string evalStruct, evalBody, evalPhil = "A";
  evalCmd->add_option("structure", evalStruct, "Structure file")->required();
  evalCmd->add_option("--body", evalBody, "Formula; one free variable binds to AT")->required();
  evalCmd->add_option("--philosophy", evalPhil, "Equality reading: A or B")
      ->check(CLI::IsMember({"A", "B"}));

  auto* search = app.add_subcommand("search", "Exhaustive model search for one config and size");
  std::string searchPreset, searchConfig, searchPhil, searchOut;
  int searchSize = 2, searchDepth = -1, searchNc = -1, searchWorkers = 1, searchWitnessCap = 16;
  bool searchPrimed = false, searchStrat = false, searchPathology = false;
  CheckFlags searchFlags;
  search->add_option("--preset", searchPreset, "Preset name, e.g. NAM1a");
  search->add_option("--config", searchConfig, "Inline config JSON file");
  search->add_option("--size", searchSize, "Structure size n")->required();
  search->add_option("--depth", searchDepth, "Family depth override");
  search->add_option("--philosophy", searchPhil, "Equality reading override: A or B")
      ->check(CLI::IsMember({"A", "B"}));
  search->add_option("--nc", searchNc, "Numbered normality condition override (0 disables)");
  search->add_flag("--primed", searchPrimed, "Primed reading for NC5..NC8");
  search->add_flag("--stratified", searchStrat, "Stratification as the normality condition");
  search->add_option("--workers", searchWorkers, "Worker threads")->check(CLI::Range(1, 64));
  search->add_option("--witness-cap", searchWitnessCap, "Witness cap (0 keeps all)");
  search->add_flag("--pathology", searchPathology, "Add Russell/slim denotation facts");
  search->add_option("--out", searchOut, "Write the verdict JSON here instead of stdout");
  add_check_flags(search, searchFlags);

  auto* familyCmd = app.add_subcommand("family", "Dump the formula family, one per line");
  int familyDepth = 1;
  bool familyConstants = false;
  familyCmd->add_option("--depth", familyDepth, "Family depth (0..2)");
  familyCmd->add_flag("--constants", familyConstants, "Allow US/OM/AT constants in members");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (probe->parsed()) return cmd_probe(probeVariant, probeBody);
    if (matrix->parsed())
      return cmd_matrix(matrixSpec, matrixOut, matrixWorkers, matrixTimings, matrixFlags);
    if (evalCmd->parsed()) return cmd_eval(evalStruct, evalBody, evalPhil);
    if (search->parsed())
      return cmd_search(searchPreset, searchConfig, searchSize, searchDepth, searchPhil, searchNc,
                        searchPrimed, searchStrat, searchWorkers, searchWitnessCap,
                        searchPathology, searchOut, searchFlags);
    if (familyCmd->parsed()) return cmd_family(familyDepth, familyConstants);
  } catch (const nam::CapError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const nam::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
