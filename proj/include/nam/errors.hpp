#pragma once

#include <stdexcept>
#include <string>

namespace nam {

// A hard limit was exceeded (universe size, family depth). CLI exit code 3.
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid system configuration, preset name, or experiment spec. CLI exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed serialized structure or report input. CLI exit code 1.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nam
