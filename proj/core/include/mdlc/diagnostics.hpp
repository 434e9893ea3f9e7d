#pragma once

#include <cstddef>
#include <vector>

#include "mdlc/grid.hpp"
#include "mdlc/initial_data.hpp"

namespace mdlc {

/// Gauge pair at a single time level.
struct GaugeLevel {
    std::vector<double> aplus;
    std::vector<double> aminus;
};

/// Full stored trajectory of a run: spinors and gauge fields at every
/// level 0..nt, plus the data and bounds they started from.
struct RunHistory {
    GridSpec grid;
    std::vector<SpinorField> spinors;
    std::vector<GaugeLevel> gauges;
    InitialData data;
    DataBounds bounds;
    double m = 0.0;

    std::size_t levels() const { return spinors.size(); }
};

/// Signed-margin summary of every estimate the suite checks. Margins are
/// signed: <= 0 means the corresponding inequality holds on the lattice.
/// Checks whose geometry is unavailable for a run (e.g. tail regions in
/// periodic mode) are reported as NaN.
struct DiagnosticsReport {
    std::vector<double> charge_series;
    double max_charge_drift = 0.0;
    double cone_violations = 0.0;
    double pointwise_margin = 0.0;
    double tail_margin = 0.0;
    double gauge_sup_margin = 0.0;
    double lorentz_residual = 0.0;
    double local_conservation_residual = 0.0;
    std::vector<double> equicontinuity_margins;
};

/// Total discrete charge sum(|u|^2 + |v|^2) dx at one level.
double total_charge(const SpinorField& spinor, const GridSpec& grid);

std::vector<double> charge_series(const RunHistory& history);

/// Relative drift of the charge series from its initial value
/// (absolute when the initial charge is zero).
double max_charge_drift(const RunHistory& history);

/// Charge inside the shrinking cone slice per level, trapezoid weights.
/// Non-increasing level to level for the exact scheme.
std::vector<double> cone_charge_series(const RunHistory& history, const ConeRegion& cone);

/// Largest downward violation of cone-charge monotonicity (max of
/// series[l+1] - series[l]); <= 0 up to rounding.
double cone_monotonicity_violation(const RunHistory& history, const ConeRegion& cone);

/// Pointwise bound margin: max over nodes (x0, t0) of
///   |u(x0,t0)|^2 - q(t0) * base_charge(x0,t0) - e^{m t0} |u0(x0-t0)|^2
/// and the v analog, with q(t) = e^{mt} m (mt+1) and base_charge the
/// trapezoid charge over the cone base at level 0. Nodes whose backward
/// cone exits the window are skipped (count via `skipped`).
double pointwise_bound_report(const RunHistory& history, std::size_t* skipped = nullptr);

/// Tail estimate margin at time tau = tau_level * dt: compares the
/// charge in |x| >= M against the transported-data tail plus the
/// 2 tau q(tau) charge term over |x| >= M - tau. Requires zero-inflow
/// boundaries and M - tau > 0.
double tail_report(const RunHistory& history, double M, std::size_t tau_level);

/// Gauge sup-bound margin: max over levels and nodes of
/// |A+-| - (C1 (T+1) + C0 T) with T the history horizon.
double gauge_sup_report(const RunHistory& history);

/// Max over interior space-time nodes of |Dt A0 - Dx A1| with centered
/// differences on the reconstructed (A0, A1).
double lorentz_residual(const RunHistory& history);

/// Max over interior space-time nodes of
/// |Dt(|u|^2 + |v|^2) + Dx(|u|^2 - |v|^2)| with centered differences.
double local_conservation_residual(const RunHistory& history);

/// Double integral of |v|^2 (component 'v') or |u|^2 ('u') over the
/// backward cone, product-trapezoid slice quadrature.
double cone_integral(const RunHistory& history, const ConeRegion& cone, char component);

/// Equicontinuity margin for a cone pair: |difference of cone integrals|
/// minus the modulus C0 e^{mT} m(mT+1) meas(Omega) + e^{mT} * transported
/// data charge over the symmetric-difference region. Max of the u and v
/// versions.
double equicontinuity_margin(const RunHistory& history, const ConeRegion& cone_a,
                             const ConeRegion& cone_b);

/// Runs every check with a standard selection of cones, tail geometry and
/// cone pairs derived from the grid.
DiagnosticsReport standard_report(const RunHistory& history);

}  // namespace mdlc
