#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nam/ast.hpp"
#include "nam/structure.hpp"

namespace nam {

enum class SemErrorCode {
  UndesignatedConstant,
  UnknownDenotation,
  ParametricBuilder,
  UnboundVariable,
};

class SemanticsError : public std::runtime_error {
 public:
  SemanticsError(SemErrorCode code, std::string term, const std::string& what);
  SemErrorCode code;
  std::string term;  // offending term text
};

// Variable assignment; later entries shadow earlier ones with the same name.
using Assignment = std::vector<std::pair<std::string, int>>;

enum class HullMode { Downward, Literal };

struct SemOptions {
  HullMode hullMode = HullMode::Downward;
  bool strictFounded = false;      // literal "exists a member" reading: founded(empty ext) = false
  bool powersetNormalOnly = false; // powerset_ext collects only Normal subsets
};

inline ElemSet ext(const Structure& s, int e) { return s.ext[static_cast<size_t>(e)]; }
inline int popcount_set(ElemSet m) { return __builtin_popcount(m); }

int denote(const Structure& s, const Term& t, const Assignment& env);
bool eval(const Structure& s, Philosophy phil, const Assignment& env, const Formula& f);

// {e : body holds with var := e}; other free variables come from env.
ElemSet truth_set(const Structure& s, Philosophy phil, const std::string& var,
                  const Formula& body, const Assignment& env = {});

ElemSet complement_ext(const Structure& s, int e);
std::optional<int> find_by_ext(const Structure& s, ElemSet target,
                               std::optional<bool> normalFlag = std::nullopt);

// Downward: e itself plus everything reachable by repeatedly taking members.
// Literal: union over members z of the upward closure of z (z itself included).
ElemSet hull(const Structure& s, int e, HullMode mode = HullMode::Downward);
// Downward: closure of the members only (e appears iff reachable from a member).
// Literal: hull minus e itself.
ElemSet hull_plus(const Structure& s, int e, HullMode mode = HullMode::Downward);

ElemSet union_ext(const Structure& s, int e);
ElemSet powerset_ext(const Structure& s, int e, bool normalOnly = false);

bool surjection_exists(ElemSet a, ElemSet b);
bool equipollent(ElemSet a, ElemSet b);

enum class StructPred { Slim, Mirimanoff, Founded, HeriFounded, Cantorian };

bool structural_predicate(const Structure& s, StructPred pred, int e,
                          const SemOptions& opt = {});

}  // namespace nam
