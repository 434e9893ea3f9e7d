#pragma once

#include <string>
#include <vector>

#include "mdlc/sim_config.hpp"

namespace mdlc {

// Exit codes shared by all subcommands:
//   0 pass, 1 check failure, 2 validation error, 3 numerical failure.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the configured simulation, writes snapshots, the per-level series
/// and the diagnostics report into the output directory.
int cmd_simulate(const SimConfig& config);

/// Runs the full estimate suite against configured tolerances and writes
/// the margin table; exits 0 only if every enforced margin passes.
int cmd_verify(const SimConfig& config);

/// Mesh-refinement study; exits 0 iff the finest observed order meets the
/// configured threshold.
int cmd_converge(const SimConfig& config);

/// Perturbation study over delta_list; checks the delta^2 scaling of the
/// separation functional and the fitted envelope.
int cmd_stability(const SimConfig& config);

/// argv-level entry point (subcommand dispatch, --config/--out/--workers).
int run_cli(const std::vector<std::string>& args);

}  // namespace mdlc
