#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nam/ast.hpp"
#include "nam/family.hpp"
#include "nam/semantics.hpp"
#include "nam/structure.hpp"

namespace nam {

enum class Comprehension { RaBaDi, RinoBaCo, NoBI, NoBE };
enum class Extensionality { EE, NEE, None };
enum class Fa4Variant { None, Alfa, Beta, Gamma, Eta, Phi, Psi, Chi, Jota, Kappa };
enum class Ea { EA1, EA2, EA3, EA4, EA5, EA6, EA7, EA8, EA9, KNoU };

std::string to_string(Comprehension c);
std::string to_string(Philosophy p);
std::string to_string(Extensionality e);
std::string to_string(Fa4Variant v);
std::string to_string(Ea ea);
std::string to_string(ConstTag t);
Comprehension comprehension_from_string(const std::string& s);  // ConfigError on unknown
Philosophy philosophy_from_string(const std::string& s);
Extensionality extensionality_from_string(const std::string& s);
Fa4Variant fa4_from_string(const std::string& s);
Ea ea_from_string(const std::string& s);
ConstTag const_tag_from_string(const std::string& s);

// nc: 0 = none, 1..16 the numbered conditions; stratified is exclusive with a number.
struct NcChoice {
  int number = 0;
  bool stratified = false;
  bool primed = false;  // only with number in 5..8
};

struct SystemConfig {
  std::string name = "custom";
  Comprehension comprehension = Comprehension::RaBaDi;
  Philosophy philosophy = Philosophy::A;
  Extensionality extensionality = Extensionality::EE;
  bool fa1 = false;
  bool fa2 = false;
  bool fa3 = false;
  Fa4Variant fa4 = Fa4Variant::None;
  bool dropNormalY = false;  // eta..kappa without the Normal(z) member filter
  std::vector<Ea> eventualities;  // ascending, unique
  NcChoice nc;
  ConstTag atTarget = ConstTag::AT;  // which designated constant plays "@"
  int familyDepth = 1;
  bool powersetNormalOnly = false;
  bool recordBa4 = false;                       // choice axiom listed, never evaluated
  std::vector<std::string> extraNotEvaluated;   // extra NOT-EVALUATED report entries
};

void validate(const SystemConfig& config);  // ConfigError on violation

extern const std::array<const char*, 12> kPresetNames;
SystemConfig preset(const std::string& name);  // ConfigError on unknown name

// Per-run evaluation knobs that are not part of a system's identity.
struct CheckOptions {
  HullMode hullMode = HullMode::Downward;
  bool strictFounded = false;
  bool requireClosure = false;  // missing ko/p/union/image materializations violate instead of passing
  bool nc5Bijection = false;    // NC5/NC7 antecedent as not-equipollent instead of the disjunction
};

SemOptions sem_options(const SystemConfig& config, const CheckOptions& opt);

struct SchemaInstance {
  enum class Kind { ClosedFormula, MetaCheck };
  Kind kind = Kind::MetaCheck;
  std::string schemaId;      // "raBaDi-CoS", "EE", "BA4c", "FA2", "EA7", "NC1", "NC-strat", ...
  FormulaPtr formula;        // closed payload, or the family body the check is bound to
  int element = -1;          // bound element for per-element checks
  bool evaluable = true;     // false entries are reported as NOT-EVALUATED
};

// Universally closed comprehension axiom for one body A (at most one free variable;
// ConfigError otherwise). The builder binds A's free variable, or x when A is closed.
SchemaInstance comprehension_instance(Comprehension variant, const FormulaPtr& A);

// Family a config instantiates schemata over: the depth-bounded enumeration, closed
// under the supplement transform when EA9 is active. builderKeys[i] is the denotation
// table key for members[i]; suppIndex[i] locates supplement(members[i]).
struct PreparedFamily {
  std::vector<FormulaPtr> members;
  std::vector<std::string> builderKeys;
  std::vector<int> suppIndex;  // -1 when EA9 is inactive
};

PreparedFamily prepare_family(const SystemConfig& config);
PreparedFamily prepare_family_from(const SystemConfig& config, std::vector<FormulaPtr> members);

// Two-free-variable family used by FA4; rows(A)[u] = {v : A(u, v)} on the structure.
std::vector<FormulaPtr> binary_family(const SystemConfig& config);
std::array<ElemSet, kMaxN> binary_relation(const Structure& s, Philosophy phil, const Formula& A);
bool functional_on(const Structure& s, const std::array<ElemSet, kMaxN>& rows);

bool ee_holds(const Structure& s);
bool nee_holds(const Structure& s, Philosophy phil);

// Normal(op(e))-style conclusions: true when some Normal element has the target
// extension; when no element has it the default policy passes (requireClosure fails).
bool materialized_normal(const Structure& s, ElemSet target, const CheckOptions& opt);

bool fa1_holds(const Structure& s);  // precondition: OM designated
bool fa2_holds_at(const Structure& s, int e, const SystemConfig& config, const CheckOptions& opt);
bool fa3_holds_at(const Structure& s, int e, const SystemConfig& config, const CheckOptions& opt);
bool fa4_holds_at(const Structure& s, int e, const std::array<ElemSet, kMaxN>& rows,
                  const SystemConfig& config, const CheckOptions& opt);

bool ea_holds(const Structure& s, Ea ea, const SystemConfig& config,
              const PreparedFamily& family, const CheckOptions& opt);

bool nc_antecedent(const Structure& s, int nc, int e, bool primed, const CheckOptions& opt);
bool nc_escape(const Structure& s, int nc, int e, bool primed);
bool nc_holds_at(const Structure& s, int nc, int e, bool primed, const CheckOptions& opt);
bool nc_axiom_holds(const Structure& s, const SystemConfig& config, const CheckOptions& opt,
                    const PreparedFamily* family = nullptr);

// NOT-EVALUATED entries for a config checked against structures enumerated with the
// given designation availability (order matches the checklist).
std::vector<std::string> not_evaluated_entries(const SystemConfig& config, bool omDesignated,
                                               bool atDesignated);

// Full deterministic checklist for one structure: comprehension per family member,
// extensionality, recorded choice axiom, FA1..FA4, EAs, NC.
std::vector<SchemaInstance> list_axiom_instances(const SystemConfig& config,
                                                 const PreparedFamily& family,
                                                 const Structure& s);

// Generic (non-pruned) evaluation of one checklist entry; precondition: evaluable.
bool instance_holds(const Structure& s, const SchemaInstance& inst, const SystemConfig& config,
                    const PreparedFamily& family, const CheckOptions& opt);

}  // namespace nam
