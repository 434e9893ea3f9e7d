#pragma once

#include <span>
#include <vector>

#include "mdlc/grid.hpp"
#include "mdlc/initial_data.hpp"

namespace mdlc {

/// Second-order Taylor start for the wave leapfrog:
/// A[i] = a0[i] + dt a1[i] + (dt^2/2) (Dxx a0[i] + source0[i]).
/// Zero-inflow edges use the one-sided transport update next[0] = a0[1].
std::vector<double> first_step(const std::vector<double>& a0, const std::vector<double>& a1,
                               const std::vector<double>& source0, const GridSpec& grid);

/// Unit-CFL leapfrog for box A = source:
/// next[i] = curr[i+1] + curr[i-1] - prev[i] + dt^2 source_curr[i].
/// At dt == dx this integrates the homogeneous wave operator exactly
/// along the lattice characteristics.
std::vector<double> leapfrog_wave(const std::vector<double>& prev,
                                  const std::vector<double>& curr,
                                  const std::vector<double>& source_curr,
                                  const GridSpec& grid);

enum class ConeQuadrature {
    // Telescoped form of the leapfrog recurrence: the a1 term and the
    // source cone are summed over the characteristic sublattice
    // {j : |j-i| <= n-1-s, j = i+(n-1-s) mod 2}. Reproduces the scheme
    // value to rounding, making the evaluation an implementation oracle.
    Matched,
    // Continuum-style product-trapezoid rule over full cone slices;
    // agrees with the leapfrog at O(dx^2) for smooth inputs.
    Trapezoid
};

/// Direct evaluation of the d'Alembert representation
///   A(x,t) = [a0(x+t) + a0(x-t)]/2 + (1/2) int_{x-t}^{x+t} a1
///            + (1/2) double-int over the backward cone of the source,
/// at a lattice node. source_history[s] is the source array at level s
/// (levels 0..level-1 are read). The full backward cone must lie inside
/// the window.
double dalembert_eval(std::size_t node, std::size_t level, const std::vector<double>& a0,
                      const std::vector<double>& a1,
                      std::span<const std::vector<double>> source_history,
                      const GridSpec& grid,
                      ConeQuadrature quadrature = ConeQuadrature::Matched);

/// Initial two-level gauge state: level 0 from the data, level 1 from
/// first_step driven by the level-0 spinor sources (|v0|^2 for A+,
/// |u0|^2 for A-).
GaugeField initial_gauge(const InitialData& data, const GridSpec& grid);

/// One leapfrog step for both light-cone components, sourced by the
/// level-k spinor: |v|^2 drives A+, |u|^2 drives A-. Returns the shifted
/// two-level state (levels k, k+1).
GaugeField advance_gauge(const GaugeField& gauge, const SpinorField& spinor,
                         const GridSpec& grid);

}  // namespace mdlc
