#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cci/ring_grid.hpp"
#include "cci/solve.hpp"

namespace cci::io {

enum class RunMode { cci, gp, exact2, fock, sweep, fig1, fig2 };

enum class SweepSolver { cci, gp };

/// Full run description, parsed from a sectioned `key = value` file.
/// Every numeric field is validated up front; unknown sections or keys are
/// a hard error.
struct RunConfig {
  RunMode mode = RunMode::cci;

  // [model]
  Real gamma = -0.2;
  int n_particles = 2;
  int grid_m = 256;
  int n_max = 64;  // exact2 / fock modes
  int p0 = 0;      // exact2 mode momentum sector

  // [solver]
  CciSolveConfig solver;

  // [run]
  std::uint64_t rng_seed = 0;
  std::string output_dir;

  // [sweep]
  SweepSolver sweep_solver = SweepSolver::cci;
  std::vector<Real> gamma_list;
  std::vector<int> n_list;
  int jobs = 1;

  void validate() const;
};

std::string to_string(RunMode mode);
RunMode parse_mode(const std::string& text);

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Applies a `section.key=value` override on top of a parsed config.
void apply_override(RunConfig& config, const std::string& assignment);

/// The effective configuration as ordered key/value pairs (section.key),
/// echoed into manifests and reusable as an input file.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig&);

}  // namespace cci::io
