#pragma once

#include <filesystem>
#include <vector>

#include "cci/io/config.hpp"
#include "cci/io/manifest.hpp"

namespace cci::io {

enum class RunStatus { success = 0, error = 1, unconverged = 2 };

struct RunOutcome {
  RunStatus status = RunStatus::success;
  std::filesystem::path run_dir;
  RunManifest manifest;
};

/// Executes one configuration: solves, writes the data files into the run
/// directory, and writes the manifest last (atomically). Sweep mode fans
/// out over the configured lists, optionally in parallel, with results
/// identical to serial execution.
RunOutcome run(const RunConfig& config);

/// The per-combination outcomes of a sweep (also produced by run() in
/// sweep mode, which additionally writes the summary table).
std::vector<RunOutcome> run_sweep_combinations(const RunConfig& config);

/// Resolves the run directory: absolute output_dir is used as is, a
/// relative one is anchored at $CCI_RING_OUTPUT_ROOT when set, else the
/// working directory. Empty output_dir defaults to "<mode>-run".
std::filesystem::path resolve_output_dir(const RunConfig& config);

}  // namespace cci::io
