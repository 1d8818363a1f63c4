#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nam/catalog.hpp"
#include "nam/probe.hpp"
#include "nam/search.hpp"

namespace nam {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kDefaultWitnessCap = 16;

Json config_to_json(const SystemConfig& config);
// A preset name string, or an inline object whose keys override the defaults.
// Eventuality lists are sorted and deduplicated on the way in.
SystemConfig config_from_json(const Json& j);

struct Experiment {
  SystemConfig config;
  std::vector<int> sizes;
  std::vector<std::string> probes;              // probe bodies, run per cell
  std::vector<std::string> consequenceTargets;  // checked up to each cell's size
};

struct ExperimentSpec {
  std::vector<Experiment> experiments;
  std::string outputPath;  // empty: caller decides (stdout)
  int witnessCap = kDefaultWitnessCap;
};

// ConfigError on invalid specs, CapError when sizes or depth exceed the caps.
ExperimentSpec parse_experiment_spec(const Json& j);
Json spec_to_json(const ExperimentSpec& spec);  // normalized echo embedded in reports

struct RunOptions {
  CheckOptions check;
  int workers = 1;
  bool timings = false;  // off keeps elapsedMs at 0 so reruns are byte-identical
};

Json probe_to_json(const ProbeResult& r);
Json verdict_to_json(const Verdict& v);
Json consequence_to_json(const ConsequenceResult& r);

// One cell per (experiment, size) in spec order:
// {version, spec, cells:[{config, size, modelCount, witnesses, notEvaluated,
//  probes, elapsedMs}]}, plus "consequences" in cells that requested targets.
Json run_matrix(const ExperimentSpec& spec, const RunOptions& opt = {});

}  // namespace nam
