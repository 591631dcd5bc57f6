#pragma once

#include <stdexcept>
#include <string>

namespace cci {

/// Invalid run or solver configuration (bad grid size, unknown key, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// The shift-overlap denominator of the projected energy vanished; the
/// orbital has no weight in the requested momentum sector.
class DegenerateOrbitalError : public std::runtime_error {
 public:
  explicit DegenerateOrbitalError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace cci
