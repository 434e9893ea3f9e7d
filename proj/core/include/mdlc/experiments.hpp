#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdlc/diagnostics.hpp"
#include "mdlc/grid.hpp"
#include "mdlc/initial_data.hpp"

namespace mdlc {

/// Raised when a run produces a non-finite value; carries the level.
class NonFiniteError : public std::runtime_error {
  public:
    NonFiniteError(std::size_t level, const std::string& what)
        : std::runtime_error(what), level_(level) {}
    std::size_t level() const { return level_; }

  private:
    std::size_t level_;
};

struct RunOptions {
    double rotation_scale = 1.0;  // fault-injection hook, see SpinorStepConfig
    bool check_window = true;     // enforce support-radius + T <= window margin
};

/// Full coupled evolution over grid.nt steps. Per level the gauge
/// leapfrog runs first (it needs the level-k spinor source), then the
/// spinor step (it needs A at levels k and k+1). Stores every level.
RunHistory run_simulation(const InitialData& data, const GridSpec& grid, double m,
                          const RunOptions& opts = {});

/// One refinement-pair row: distances between the runs at `param` and
/// `param`/2 (or consecutive n / delta entries, depending on the study).
struct ConvergenceRow {
    double param = 0.0;
    double distance_uv = 0.0;     // C([0,T]; L^2) surrogate for (u, v)
    double distance_gauge = 0.0;  // sup norm over common nodes for A+-
    double observed_order = 0.0;  // log2 of successive distance ratios; NaN on the last row
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
};

/// Mesh-refinement study: runs the preset on each dx of a halving chain
/// and measures successive-pair distances on common nodes and levels.
ConvergenceTable convergence_study(Preset preset, const PresetParams& params, double xmin,
                                   double xmax, std::span<const double> dx_list, double T,
                                   double m, Boundary boundary, int workers = 1);

/// Smoothing study on a fixed grid: solves from mollify(data, n) for each
/// n and measures distances between consecutive solutions. The Cauchy
/// behavior of these distances is the computable surrogate of the
/// smooth-approximation construction.
ConvergenceTable mollification_study(const InitialData& rough_data,
                                     std::span<const int> n_list, const GridSpec& grid,
                                     double m, int workers = 1);

/// Squared L^2 separation of two runs over the shrinking interval
/// [-T + t, T - t], with the fitted exponential envelope.
struct StabilityTrace {
    std::vector<double> times;
    std::vector<double> separation;    // I(t, T), one value per level
    double fitted_rate = 0.0;          // C in the envelope offset * e^{C t}
    double envelope_offset = 0.0;      // I(0) when positive, else fitted
    double envelope_margin = 0.0;      // max over the test half of I - envelope
    double g_T = 0.0;                  // gauge-data difference functional
};

/// Runs base data against (base + delta * perturbation) and traces the
/// separation functional. The envelope is fitted on t in (0, T/2] and
/// envelope_margin reports the worst exceedance on (T/2, T].
StabilityTrace stability_study(const InitialData& data, double delta,
                               const InitialData& perturbation, const GridSpec& grid,
                               double m);

/// Support interval of the data above a relative threshold; used for the
/// window-adequacy precondition (support +- T must stay inside).
struct SupportInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
};
SupportInterval data_support(const InitialData& data, const GridSpec& grid);

}  // namespace mdlc
