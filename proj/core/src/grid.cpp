#include "mdlc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mdlc {

namespace {

// Commensurability check: span must be an integer multiple of dx up to
// accumulated rounding of the inputs.
std::size_t snap_multiple(double span, double dx, const char* what) {
    const double ratio = span / dx;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-8 * std::max(1.0, std::abs(rounded))) {
        throw std::invalid_argument(std::string(what) +
                                    " is not an integer multiple of dx (ratio " +
                                    std::to_string(ratio) + ")");
    }
    return static_cast<std::size_t>(rounded);
}

}  // namespace

GridSpec make_grid(double xmin, double xmax, double dx, double T, Boundary boundary) {
    if (!(dx > 0.0)) throw std::invalid_argument("make_grid: dx must be positive");
    if (!(xmax > xmin)) throw std::invalid_argument("make_grid: xmax must exceed xmin");
    if (T < 0.0) throw std::invalid_argument("make_grid: T must be nonnegative");

    const std::size_t cells = snap_multiple(xmax - xmin, dx, "window");
    if (cells + 1 < 3) throw std::invalid_argument("make_grid: need at least 3 nodes");

    GridSpec g;
    g.xmin = xmin;
    g.xmax = xmax;
    g.nx = cells + 1;
    g.dx = (xmax - xmin) / static_cast<double>(cells);
    g.dt = g.dx;
    g.nt = snap_multiple(T, dx, "horizon T");
    g.boundary = boundary;
    return g;
}

std::size_t GridSpec::index_of(double xq) const {
    const double ratio = (xq - xmin) / dx;
    const auto i = static_cast<std::ptrdiff_t>(std::llround(ratio));
    if (i < 0 || i >= static_cast<std::ptrdiff_t>(nx) ||
        std::abs(ratio - static_cast<double>(i)) > 1e-6) {
        throw std::invalid_argument("GridSpec::index_of: coordinate is not a lattice node");
    }
    return static_cast<std::size_t>(i);
}

ConeRegion make_cone(const GridSpec& grid, std::size_t apex_index, std::size_t apex_level) {
    if (apex_index >= grid.nx) throw std::invalid_argument("make_cone: apex index outside grid");
    if (apex_index < apex_level || apex_index + apex_level > grid.nx - 1) {
        throw std::invalid_argument("make_cone: cone base leaves the window");
    }
    return ConeRegion{apex_index, apex_level};
}

ConeRegion cone_at(const GridSpec& grid, double x0, double t0) {
    if (t0 < 0.0) throw std::invalid_argument("cone_at: apex time must be nonnegative");
    const std::size_t i = grid.index_of(x0);
    const auto k = static_cast<std::size_t>(std::llround(t0 / grid.dt));
    if (std::abs(t0 / grid.dt - static_cast<double>(k)) > 1e-6) {
        throw std::invalid_argument("cone_at: apex time is not a lattice level");
    }
    return make_cone(grid, i, k);
}

IndexInterval cone_slice(const GridSpec& grid, const ConeRegion& cone, std::size_t level) {
    (void)grid;
    if (level > cone.apex_level) {
        throw std::invalid_argument("cone_slice: level outside [0, apex_level]");
    }
    const std::size_t r = cone.apex_level - level;
    return IndexInterval{cone.apex_index - r, cone.apex_index + r};
}

double symmetric_difference_measure(const ConeRegion& a, const ConeRegion& b,
                                    const GridSpec& grid) {
    const double x0 = grid.x(a.apex_index);
    const double t0 = grid.time(a.apex_level);
    const double x1 = grid.x(b.apex_index);
    const double t1 = grid.time(b.apex_level);

    const double left = std::max(x0 - t0, x1 - t1);
    const double right = std::min(x0 + t0, x1 + t1);
    const double half = std::max(0.0, (right - left) / 2.0);
    return t0 * t0 + t1 * t1 - 2.0 * half * half;
}

bool all_finite(const std::vector<double>& a) {
    return std::all_of(a.begin(), a.end(), [](double x) { return std::isfinite(x); });
}

bool all_finite(const std::vector<std::complex<double>>& a) {
    return std::all_of(a.begin(), a.end(), [](const std::complex<double>& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

}  // namespace mdlc
