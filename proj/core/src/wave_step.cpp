#include "mdlc/wave_step.hpp"

#include <cmath>
#include <stdexcept>

namespace mdlc {

namespace {

void require_length(std::size_t got, std::size_t want, const char* who) {
    if (got != want) throw std::invalid_argument(std::string(who) + ": array length mismatch");
}

}  // namespace

std::vector<double> first_step(const std::vector<double>& a0, const std::vector<double>& a1,
                               const std::vector<double>& source0, const GridSpec& grid) {
    const std::size_t n = grid.nx;
    require_length(a0.size(), n, "first_step");
    require_length(a1.size(), n, "first_step");
    require_length(source0.size(), n, "first_step");

    const double dt = grid.dt;
    const double half_dt2 = 0.5 * dt * dt;
    const double inv_dx2 = 1.0 / (grid.dx * grid.dx);

    std::vector<double> next(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double dxx = (a0[i + 1] - 2.0 * a0[i] + a0[i - 1]) * inv_dx2;
        next[i] = a0[i] + dt * a1[i] + half_dt2 * (dxx + source0[i]);
    }
    if (grid.periodic()) {
        const double dxx0 = (a0[1] - 2.0 * a0[0] + a0[n - 1]) * inv_dx2;
        next[0] = a0[0] + dt * a1[0] + half_dt2 * (dxx0 + source0[0]);
        const double dxxn = (a0[0] - 2.0 * a0[n - 1] + a0[n - 2]) * inv_dx2;
        next[n - 1] = a0[n - 1] + dt * a1[n - 1] + half_dt2 * (dxxn + source0[n - 1]);
    } else {
        next[0] = a0[1];
        next[n - 1] = a0[n - 2];
    }
    return next;
}

std::vector<double> leapfrog_wave(const std::vector<double>& prev,
                                  const std::vector<double>& curr,
                                  const std::vector<double>& source_curr,
                                  const GridSpec& grid) {
    const std::size_t n = grid.nx;
    require_length(prev.size(), n, "leapfrog_wave");
    require_length(curr.size(), n, "leapfrog_wave");
    require_length(source_curr.size(), n, "leapfrog_wave");

    const double dt2 = grid.dt * grid.dt;
    std::vector<double> next(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        next[i] = curr[i + 1] + curr[i - 1] - prev[i] + dt2 * source_curr[i];
    }
    if (grid.periodic()) {
        next[0] = curr[1] + curr[n - 1] - prev[0] + dt2 * source_curr[0];
        next[n - 1] = curr[0] + curr[n - 2] - prev[n - 1] + dt2 * source_curr[n - 1];
    } else {
        next[0] = curr[1];
        next[n - 1] = curr[n - 2];
    }
    return next;
}

double dalembert_eval(std::size_t node, std::size_t level, const std::vector<double>& a0,
                      const std::vector<double>& a1,
                      std::span<const std::vector<double>> source_history,
                      const GridSpec& grid, ConeQuadrature quadrature) {
    const std::size_t nx = grid.nx;
    require_length(a0.size(), nx, "dalembert_eval");
    require_length(a1.size(), nx, "dalembert_eval");
    if (node < level || node + level > nx - 1) {
        throw std::invalid_argument("dalembert_eval: backward cone exits the window");
    }
    if (level == 0) return a0[node];
    if (source_history.size() < level) {
        throw std::invalid_argument("dalembert_eval: source history too short");
    }
    for (std::size_t s = 0; s < level; ++s) {
        require_length(source_history[s].size(), nx, "dalembert_eval");
    }

    const std::size_t i = node;
    const std::size_t n = level;
    const double h = grid.dx;
    double acc = 0.5 * (a0[i + n] + a0[i - n]);

    if (quadrature == ConeQuadrature::Matched) {
        // Characteristic-sublattice sums; exactly the telescoped recurrence.
        double vel = 0.0;
        for (std::size_t j = i - (n - 1); j <= i + (n - 1); j += 2) vel += a1[j];
        acc += h * vel;

        double src = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const std::size_t r = n - 1 - s;
            double slice = 0.0;
            for (std::size_t j = i - r; j <= i + r; j += 2) slice += source_history[s][j];
            src += (s == 0 ? 0.5 : 1.0) * slice;
        }
        acc += h * h * src;
    } else {
        double vel = 0.5 * a1[i - n] + 0.5 * a1[i + n];
        for (std::size_t j = i - n + 1; j <= i + n - 1; ++j) vel += a1[j];
        acc += 0.5 * h * vel;

        // Product trapezoid over the cone; the apex slice has zero width.
        double src = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const std::size_t r = n - s;
            double slice = 0.5 * source_history[s][i - r] + 0.5 * source_history[s][i + r];
            for (std::size_t j = i - r + 1; j <= i + r - 1; ++j) slice += source_history[s][j];
            src += (s == 0 ? 0.5 : 1.0) * slice;
        }
        acc += 0.5 * h * h * src;
    }
    return acc;
}

GaugeField initial_gauge(const InitialData& data, const GridSpec& grid) {
    require_length(data.size(), grid.nx, "initial_gauge");
    std::vector<double> splus(grid.nx), sminus(grid.nx);
    for (std::size_t i = 0; i < grid.nx; ++i) {
        splus[i] = std::norm(data.v0[i]);
        sminus[i] = std::norm(data.u0[i]);
    }
    GaugeField g;
    g.aplus_prev = data.aplus0;
    g.aminus_prev = data.aminus0;
    g.aplus_curr = first_step(data.aplus0, data.aplus1, splus, grid);
    g.aminus_curr = first_step(data.aminus0, data.aminus1, sminus, grid);
    g.level = 1;
    return g;
}

GaugeField advance_gauge(const GaugeField& gauge, const SpinorField& spinor,
                         const GridSpec& grid) {
    if (spinor.level != gauge.level) {
        throw std::invalid_argument("advance_gauge: spinor level must match gauge current level");
    }
    require_length(spinor.u.size(), grid.nx, "advance_gauge");

    std::vector<double> splus(grid.nx), sminus(grid.nx);
    for (std::size_t i = 0; i < grid.nx; ++i) {
        splus[i] = std::norm(spinor.v[i]);
        sminus[i] = std::norm(spinor.u[i]);
    }
    GaugeField next;
    next.aplus_curr = leapfrog_wave(gauge.aplus_prev, gauge.aplus_curr, splus, grid);
    next.aminus_curr = leapfrog_wave(gauge.aminus_prev, gauge.aminus_curr, sminus, grid);
    next.aplus_prev = gauge.aplus_curr;
    next.aminus_prev = gauge.aminus_curr;
    next.level = gauge.level + 1;
    return next;
}

}  // namespace mdlc
