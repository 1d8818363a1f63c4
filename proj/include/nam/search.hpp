#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nam/catalog.hpp"
#include "nam/structure.hpp"

namespace nam {

struct EnumConstraints {
  bool extensionalOnly = false;  // skip structures with duplicate extensions
  bool quotientB = false;        // skip structures with duplicate (extension, flag) pairs
  bool designateUS = false;      // require a full-extension element; designate the lowest as US
};

// All 2^(n*n) membership relations times 2^n labelings, in the string-lexicographic
// order of the serialized E and N grids (grid position 0 is the highest counter bit;
// labels iterate innermost). fn returning false stops the stream. CapError on n out
// of range.
void for_each_structure(int n, const EnumConstraints& constraints,
                        const std::function<bool(const Structure&)>& fn);
std::vector<Structure> enumerate_structures(int n, const EnumConstraints& constraints);

struct Violation {
  std::string schemaId;
  int element = -1;
  std::string formula;    // bound family body, when the instance has one
  std::string structure;  // serialized rejected candidate
};

struct Verdict {
  SystemConfig config;
  int size = 0;
  uint64_t candidates = 0;  // structures enumerated (after constraints)
  uint64_t modelCount = 0;
  std::vector<Structure> witnesses;
  std::map<std::string, uint64_t> violationCounts;  // first-failing schemaId -> candidates
  std::vector<Violation> sampleViolations;
  std::vector<std::string> notEvaluated;
};

struct SearchOptions {
  CheckOptions check;
  int workers = 1;
  int witnessCap = 16;  // 0 keeps every accepted structure
  int violationSampleCap = 4;
  EnumConstraints constraints;  // quotientB is forced on under philosophy B
  bool honestyCheck = true;     // re-verify accepted models through the generic evaluators
};

// Exhaustive model search: for every enumerated structure, assign denotations for all
// family members (pruned per comprehension variant), walk the axiom checklist, attribute
// the first failure, and count/collect accepted models. Deterministic across runs and
// worker counts.
Verdict find_models(const SystemConfig& config, int n, const PreparedFamily& family,
                    const SearchOptions& opt = {});

// Accepted models (denotation tables filled) in enumeration order, single-threaded;
// fn returning false stops.
void for_each_model(const SystemConfig& config, int n, const PreparedFamily& family,
                    const SearchOptions& opt, const std::function<bool(const Structure&)>& fn);

struct ConsequenceResult {
  std::string target;
  bool holdsInAllModels = true;
  bool vacuous = true;  // no models at any checked size
  uint64_t modelsChecked = 0;
  std::optional<Structure> counterexample;
};

// Finite semantic consequence: evaluate the target in every model at n = 1..nMax.
// target: an axiom name ("EA2", "NC1", "EE", ...), "false", or a closed formula.
ConsequenceResult consequence_check(const SystemConfig& config, const std::string& target,
                                    int nMax, const SearchOptions& opt = {});

// Membership and normality facts for the classic pathological sets, aggregated over
// every model: the Russell denotation, the element extending {e : slim(e)}, and the
// element extending {e : every hull member is slim}.
struct PathologyReport {
  uint64_t models = 0;
  uint64_t ruDenoted = 0;
  uint64_t ruInRu = 0;
  uint64_t ruNormal = 0;
  uint64_t slimMaterialized = 0;
  uint64_t slimInSlim = 0;
  uint64_t slimNormal = 0;
  uint64_t heredSlimMaterialized = 0;
  uint64_t heredSlimInSelf = 0;
  uint64_t heredSlimNormal = 0;
};

PathologyReport pathology_probe(const SystemConfig& config, int n, const PreparedFamily& family,
                                const SearchOptions& opt = {});

}  // namespace nam
