#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cci/ring_grid.hpp"

namespace cci::io {

/// Machine-readable run record, written atomically after all data files.
/// All numeric fields except wall_time_ms reproduce exactly for identical
/// config and seed.
struct RunManifest {
  std::string format_version = "1";
  std::string mode;
  std::string status;  // success | unconverged | error
  std::vector<std::pair<std::string, std::string>> config;
  std::map<std::string, Real> energies;
  std::map<std::string, Real> diagnostics;  // norms, counts, flags as numbers
  std::vector<std::string> artifacts;
  Real wall_time_ms = 0.0;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
};

void write_manifest_atomic(const std::filesystem::path& path, const RunManifest&);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace cci::io
