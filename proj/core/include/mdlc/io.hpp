#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mdlc/diagnostics.hpp"
#include "mdlc/experiments.hpp"

namespace mdlc {

/// FNV-1a 64-bit hash; stamps emitted files with the config they came from.
std::uint64_t fnv1a64(std::string_view bytes);

/// Shortest round-trip decimal form of a double ("%.17g").
std::string format_double(double x);

/// Per-level field snapshot:
/// x, re_u, im_u, re_v, im_v, aplus, aminus.
void write_snapshot_csv(const std::string& path, const RunHistory& history, std::size_t level,
                        const std::string& provenance);

/// Per-level series: level, t, charge, cone_charge, lorentz_residual,
/// local_conservation_residual (NaN where a value is undefined).
void write_series_csv(const std::string& path, const RunHistory& history,
                      const DiagnosticsReport& report, const std::string& provenance);

/// Flat key = value report file.
void write_report_txt(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& entries,
                      const std::string& provenance);

void write_convergence_csv(const std::string& path, const ConvergenceTable& table,
                           const std::string& param_name, const std::string& provenance);

void write_stability_csv(const std::string& path, const StabilityTrace& trace,
                         const std::string& provenance);

}  // namespace mdlc
