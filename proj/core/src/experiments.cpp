#include "mdlc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "mdlc/dirac_step.hpp"
#include "mdlc/numerics.hpp"
#include "mdlc/wave_step.hpp"

namespace mdlc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double max_abs_all(const InitialData& d) {
    double m = 0.0;
    for (const auto& z : d.u0) m = std::max(m, std::abs(z));
    for (const auto& z : d.v0) m = std::max(m, std::abs(z));
    m = std::max(m, sup_norm(d.aplus0));
    m = std::max(m, sup_norm(d.aplus1));
    m = std::max(m, sup_norm(d.aminus0));
    m = std::max(m, sup_norm(d.aminus1));
    return m;
}

void check_finite_level(const SpinorField& sp, const GaugeField& gauge, std::size_t level) {
    if (!all_finite(sp.u) || !all_finite(sp.v) || !all_finite(gauge.aplus_curr) ||
        !all_finite(gauge.aminus_curr)) {
        throw NonFiniteError(level, "non-finite value detected at level " + std::to_string(level));
    }
}

// Run the scheduled indices on a small worker pool; results are written
// by index, so assembly order is deterministic regardless of worker count.
template <typename Fn>
void parallel_indices(std::size_t count, int workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const auto n = static_cast<std::size_t>(workers);
    for (std::size_t w = 0; w < std::min(n, count); ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

// C([0,T]; L^2) surrogate distance between two histories on a common
// sub-lattice: fine history is sampled at stride in both index and level.
double distance_uv(const RunHistory& coarse, const RunHistory& fine, std::size_t stride) {
    double worst = 0.0;
    for (std::size_t k = 0; k < coarse.levels(); ++k) {
        const auto& a = coarse.spinors[k];
        const auto& b = fine.spinors[k * stride];
        double acc = 0.0;
        for (std::size_t i = 0; i < coarse.grid.nx; ++i) {
            acc += std::norm(a.u[i] - b.u[i * stride]) + std::norm(a.v[i] - b.v[i * stride]);
        }
        worst = std::max(worst, std::sqrt(acc * coarse.grid.dx));
    }
    return worst;
}

double distance_gauge(const RunHistory& coarse, const RunHistory& fine, std::size_t stride) {
    double worst = 0.0;
    for (std::size_t k = 0; k < coarse.levels(); ++k) {
        const auto& a = coarse.gauges[k];
        const auto& b = fine.gauges[k * stride];
        for (std::size_t i = 0; i < coarse.grid.nx; ++i) {
            worst = std::max(worst, std::abs(a.aplus[i] - b.aplus[i * stride]));
            worst = std::max(worst, std::abs(a.aminus[i] - b.aminus[i * stride]));
        }
    }
    return worst;
}

void fill_orders(ConvergenceTable& table) {
    for (std::size_t j = 0; j < table.rows.size(); ++j) {
        if (j + 1 < table.rows.size() && table.rows[j + 1].distance_uv > 0.0) {
            table.rows[j].observed_order =
                std::log2(table.rows[j].distance_uv / table.rows[j + 1].distance_uv);
        } else {
            table.rows[j].observed_order = kNaN;
        }
    }
}

}  // namespace

SupportInterval data_support(const InitialData& data, const GridSpec& grid) {
    const double threshold = 1e-13 * (1.0 + max_abs_all(data));
    SupportInterval s;
    for (std::size_t i = 0; i < grid.nx; ++i) {
        const double a = std::max({std::abs(data.u0[i]), std::abs(data.v0[i]),
                                   std::abs(data.aplus0[i]), std::abs(data.aplus1[i]),
                                   std::abs(data.aminus0[i]), std::abs(data.aminus1[i])});
        if (a <= threshold) continue;
        if (s.empty) {
            s.lo = s.hi = grid.x(i);
            s.empty = false;
        } else {
            s.hi = grid.x(i);
        }
    }
    return s;
}

RunHistory run_simulation(const InitialData& data, const GridSpec& grid, double m,
                          const RunOptions& opts) {
    if (data.size() != grid.nx) {
        throw std::invalid_argument("run_simulation: data not sampled on grid");
    }
    if (m < 0.0) throw std::invalid_argument("run_simulation: mass must be nonnegative");
    if (!all_finite(data.u0) || !all_finite(data.v0) || !all_finite(data.aplus0) ||
        !all_finite(data.aplus1) || !all_finite(data.aminus0) || !all_finite(data.aminus1)) {
        throw std::invalid_argument("run_simulation: non-finite initial data");
    }
    if (opts.check_window && !grid.periodic()) {
        const SupportInterval s = data_support(data, grid);
        if (!s.empty) {
            const double T = grid.horizon();
            if (s.lo - grid.xmin < T - 1e-12 || grid.xmax - s.hi < T - 1e-12) {
                throw std::invalid_argument(
                    "run_simulation: window adequacy violated (support + T exceeds the window); "
                    "widen the window or switch to periodic boundaries");
            }
        }
    }

    RunHistory h;
    h.grid = grid;
    h.data = data;
    h.bounds = compute_bounds(data, grid);
    h.m = m;
    h.spinors.reserve(grid.nt + 1);
    h.gauges.reserve(grid.nt + 1);

    SpinorField spinor{data.u0, data.v0, 0};
    h.spinors.push_back(spinor);
    h.gauges.push_back(GaugeLevel{data.aplus0, data.aminus0});
    if (grid.nt == 0) return h;

    const SpinorStepConfig cfg{m, opts.rotation_scale};
    GaugeField gauge = initial_gauge(data, grid);
    h.gauges.push_back(GaugeLevel{gauge.aplus_curr, gauge.aminus_curr});

    for (std::size_t k = 0;;) {
        spinor = step_spinor(spinor, gauge, grid, cfg);
        check_finite_level(spinor, gauge, spinor.level);
        h.spinors.push_back(spinor);
        ++k;
        if (k >= grid.nt) break;
        gauge = advance_gauge(gauge, spinor, grid);
        h.gauges.push_back(GaugeLevel{gauge.aplus_curr, gauge.aminus_curr});
    }
    return h;
}

ConvergenceTable convergence_study(Preset preset, const PresetParams& params, double xmin,
                                   double xmax, std::span<const double> dx_list, double T,
                                   double m, Boundary boundary, int workers) {
    (void)workers;  // runs are compared pairwise and kept two at a time
    if (dx_list.size() < 2) {
        throw std::invalid_argument("convergence_study: need at least two grid spacings");
    }
    for (std::size_t j = 0; j + 1 < dx_list.size(); ++j) {
        if (std::abs(dx_list[j] / dx_list[j + 1] - 2.0) > 1e-9) {
            throw std::invalid_argument("convergence_study: dx_list must halve at every step");
        }
    }

    auto run_at = [&](double dx) {
        const GridSpec grid = make_grid(xmin, xmax, dx, T, boundary);
        return run_simulation(make_preset(preset, params, grid), grid, m);
    };

    ConvergenceTable table;
    RunHistory coarse = run_at(dx_list[0]);
    for (std::size_t j = 0; j + 1 < dx_list.size(); ++j) {
        RunHistory fine = run_at(dx_list[j + 1]);
        ConvergenceRow row;
        row.param = dx_list[j];
        row.distance_uv = distance_uv(coarse, fine, 2);
        row.distance_gauge = distance_gauge(coarse, fine, 2);
        table.rows.push_back(row);
        coarse = std::move(fine);
    }
    fill_orders(table);
    return table;
}

ConvergenceTable mollification_study(const InitialData& rough_data,
                                     std::span<const int> n_list, const GridSpec& grid,
                                     double m, int workers) {
    if (n_list.size() < 2) {
        throw std::invalid_argument("mollification_study: need at least two smoothing levels");
    }
    for (std::size_t j = 0; j + 1 < n_list.size(); ++j) {
        if (n_list[j + 1] <= n_list[j]) {
            throw std::invalid_argument("mollification_study: n_list must be increasing");
        }
    }

    std::vector<RunHistory> runs(n_list.size());
    parallel_indices(n_list.size(), workers, [&](std::size_t j) {
        runs[j] = run_simulation(mollify(rough_data, n_list[j], grid), grid, m);
    });

    ConvergenceTable table;
    for (std::size_t j = 0; j + 1 < n_list.size(); ++j) {
        ConvergenceRow row;
        row.param = static_cast<double>(n_list[j]);
        row.distance_uv = distance_uv(runs[j], runs[j + 1], 1);
        row.distance_gauge = distance_gauge(runs[j], runs[j + 1], 1);
        table.rows.push_back(row);
    }
    fill_orders(table);
    return table;
}

StabilityTrace stability_study(const InitialData& data, double delta,
                               const InitialData& perturbation, const GridSpec& grid,
                               double m) {
    if (delta < 0.0) throw std::invalid_argument("stability_study: delta must be nonnegative");
    if (perturbation.size() != grid.nx || data.size() != grid.nx) {
        throw std::invalid_argument("stability_study: data not sampled on grid");
    }
    const double T = grid.horizon();
    if (grid.xmin > -T || grid.xmax < T) {
        throw std::invalid_argument("stability_study: window must contain [-T, T]");
    }
    const std::size_t center = grid.index_of(0.0);
    if (center < grid.nt || center + grid.nt > grid.nx - 1) {
        throw std::invalid_argument("stability_study: [-T, T] not resolved by the lattice");
    }

    InitialData perturbed = data;
    for (std::size_t i = 0; i < grid.nx; ++i) {
        perturbed.u0[i] += delta * perturbation.u0[i];
        perturbed.v0[i] += delta * perturbation.v0[i];
        perturbed.aplus0[i] += delta * perturbation.aplus0[i];
        perturbed.aplus1[i] += delta * perturbation.aplus1[i];
        perturbed.aminus0[i] += delta * perturbation.aminus0[i];
        perturbed.aminus1[i] += delta * perturbation.aminus1[i];
    }

    const RunHistory base = run_simulation(data, grid, m);
    const RunHistory other = run_simulation(perturbed, grid, m);

    StabilityTrace trace;
    trace.times.reserve(grid.nt + 1);
    trace.separation.reserve(grid.nt + 1);
    for (std::size_t k = 0; k <= grid.nt; ++k) {
        const std::size_t r = grid.nt - k;
        const std::size_t lo = center - r;
        const std::size_t hi = center + r;
        const auto& a = base.spinors[k];
        const auto& b = other.spinors[k];
        double acc = 0.0;
        if (hi > lo) {
            auto density = [&](std::size_t i) {
                return std::norm(a.u[i] - b.u[i]) + std::norm(a.v[i] - b.v[i]);
            };
            acc = 0.5 * density(lo) + 0.5 * density(hi);
            for (std::size_t i = lo + 1; i < hi; ++i) acc += density(i);
        }
        trace.times.push_back(grid.time(k));
        trace.separation.push_back(acc * grid.dx);
    }

    // Gauge-data difference functional over [-T, T]:
    // |g0+|^2 + T^2 |g1+|^2 + |g0-|^2 + T^2 |g1-|^2 in sup norms.
    {
        const std::size_t lo = center - grid.nt;
        const std::size_t hi = center + grid.nt;
        double g0p = 0.0, g1p = 0.0, g0m = 0.0, g1m = 0.0;
        for (std::size_t i = lo; i <= hi; ++i) {
            g0p = std::max(g0p, std::abs(delta * perturbation.aplus0[i]));
            g1p = std::max(g1p, std::abs(delta * perturbation.aplus1[i]));
            g0m = std::max(g0m, std::abs(delta * perturbation.aminus0[i]));
            g1m = std::max(g1m, std::abs(delta * perturbation.aminus1[i]));
        }
        trace.g_T = g0p * g0p + T * T * g1p * g1p + g0m * g0m + T * T * g1m * g1m;
    }

    // Envelope fit on (0, T/2], tested on (T/2, T].
    const std::size_t half = grid.nt / 2;
    const double i0 = trace.separation.front();
    double rate = 0.0;
    double offset = i0;
    if (i0 > 0.0) {
        for (std::size_t k = 1; k <= half; ++k) {
            if (trace.separation[k] > i0) {
                rate = std::max(rate, std::log(trace.separation[k] / i0) / trace.times[k]);
            }
        }
    } else {
        // Degenerate start (e.g. gauge-only perturbations): use the worst
        // consecutive log-slope and back out the offset.
        for (std::size_t k = 1; k + 1 <= half; ++k) {
            if (trace.separation[k] > 0.0 && trace.separation[k + 1] > trace.separation[k]) {
                rate = std::max(rate, std::log(trace.separation[k + 1] / trace.separation[k]) /
                                          grid.dt);
            }
        }
        for (std::size_t k = 1; k <= half; ++k) {
            offset = std::max(offset, trace.separation[k] * std::exp(-rate * trace.times[k]));
        }
    }
    trace.fitted_rate = rate;
    trace.envelope_offset = offset;

    double margin = 0.0;
    bool any = false;
    for (std::size_t k = half + 1; k < trace.separation.size(); ++k) {
        const double env = offset * std::exp(rate * trace.times[k]);
        const double excess = trace.separation[k] - env;
        margin = any ? std::max(margin, excess) : excess;
        any = true;
    }
    trace.envelope_margin = any ? margin : 0.0;
    return trace;
}

}  // namespace mdlc
