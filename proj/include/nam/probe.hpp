#pragma once

#include <string>

#include "nam/ast.hpp"
#include "nam/catalog.hpp"

namespace nam {

// "naive" is probe-only: the unrestricted scheme, not a configurable system.
enum class ProbeVariant { Naive, RaBaDi, RinoBaCo, NoBI, NoBE };

std::string to_string(ProbeVariant v);
ProbeVariant probe_variant_from_string(const std::string& s);  // ConfigError on unknown

enum class ForcedValue { True, False, Free };

std::string to_string(ForcedValue v);

// Propositional verdict for the self-instantiation y := t of one comprehension
// instance, decided over the ground atoms p = "t in t" and q = "N(t)".
struct ProbeResult {
  ProbeVariant variant;
  std::string body;  // canonical text of A
  bool contradiction = false;
  ForcedValue selfMembership = ForcedValue::Free;  // t in t
  ForcedValue normality = ForcedValue::Free;       // N(t)
};

// CapError when the body does not reduce to the two ground atoms at y := t
// (quantifiers, set builders, constants, or a second variable).
ProbeResult self_instantiation_probe(ProbeVariant variant, const FormulaPtr& A);

}  // namespace nam
