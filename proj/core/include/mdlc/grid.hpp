#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mdlc {

enum class Boundary {
    ZeroInflow,  // characteristics entering the window carry zero
    Periodic     // indices wrap mod nx (the nx nodes form a ring)
};

/// Uniform space-time lattice with dt == dx, so the light-cone
/// characteristics x - t and x + t pass exactly through nodes.
/// Immutable after construction; build through make_grid().
struct GridSpec {
    double xmin = 0.0;
    double xmax = 0.0;
    std::size_t nx = 0;   // node count, endpoints included
    double dx = 0.0;      // (xmax - xmin) / (nx - 1)
    double dt = 0.0;      // == dx
    std::size_t nt = 0;   // step count
    Boundary boundary = Boundary::ZeroInflow;

    double x(std::size_t i) const { return xmin + static_cast<double>(i) * dx; }
    double time(std::size_t level) const { return static_cast<double>(level) * dt; }
    double horizon() const { return static_cast<double>(nt) * dt; }

    bool periodic() const { return boundary == Boundary::Periodic; }

    /// Wraps a possibly out-of-range spatial index in periodic mode.
    std::size_t wrap(std::ptrdiff_t i) const {
        const auto n = static_cast<std::ptrdiff_t>(nx);
        return static_cast<std::size_t>(((i % n) + n) % n);
    }

    /// Nearest node index for a coordinate; throws if x is not a node.
    std::size_t index_of(double x) const;
};

/// Builds the lattice. xmax - xmin and T must be integer multiples of dx
/// up to rounding; dx is re-derived as (xmax - xmin)/(nx - 1) so the
/// stored spacing satisfies the commensurability identities exactly.
GridSpec make_grid(double xmin, double xmax, double dx, double T, Boundary boundary);

/// Closed spatial index interval [lo, hi].
struct IndexInterval {
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::size_t count() const { return hi - lo + 1; }
};

/// Backward light cone anchored at a lattice node (x0, t0); the base
/// [x0 - t0, x0 + t0] is guaranteed to lie inside the window.
struct ConeRegion {
    std::size_t apex_index = 0;
    std::size_t apex_level = 0;
};

ConeRegion make_cone(const GridSpec& grid, std::size_t apex_index, std::size_t apex_level);

/// Cone anchored at continuum coordinates, snapped to the nearest node.
ConeRegion cone_at(const GridSpec& grid, double x0, double t0);

/// Spatial slice of the cone at a given time level:
/// [apex - (t0 - t), apex + (t0 - t)] in index units.
IndexInterval cone_slice(const GridSpec& grid, const ConeRegion& cone, std::size_t level);

/// Lebesgue measure of the symmetric difference of the two backward
/// cones, as continuum triangles. The intersection of two cones
/// {s >= 0, |y - x| <= t - s} is itself a cone with base
/// [max(lefts), min(rights)], so the area is closed-form.
double symmetric_difference_measure(const ConeRegion& a, const ConeRegion& b,
                                    const GridSpec& grid);

/// Spinor pair (u, v) at one time level. u rides the right-moving
/// characteristic, v the left-moving one; |u|^2 + |v|^2 is the charge
/// density.
struct SpinorField {
    std::vector<std::complex<double>> u;
    std::vector<std::complex<double>> v;
    std::size_t level = 0;
};

/// Light-cone gauge pair (A+, A-) at two consecutive levels, the state
/// a leapfrog step consumes. `level` is the level of the *_curr arrays;
/// the *_prev arrays live at level - 1.
struct GaugeField {
    std::vector<double> aplus_prev;
    std::vector<double> aminus_prev;
    std::vector<double> aplus_curr;
    std::vector<double> aminus_curr;
    std::size_t level = 0;
};

bool all_finite(const std::vector<double>& a);
bool all_finite(const std::vector<std::complex<double>>& a);

}  // namespace mdlc
