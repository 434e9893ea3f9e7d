#include "mdlc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mdlc/numerics.hpp"

namespace mdlc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Interval {
    std::ptrdiff_t lo = 0;
    std::ptrdiff_t hi = -1;  // empty when hi < lo
    bool empty() const { return hi < lo; }
};

// Symmetric difference of two closed integer intervals, as up to two
// disjoint intervals.
std::vector<Interval> interval_symmetric_difference(const Interval& a, const Interval& b) {
    std::vector<Interval> out;
    if (a.empty() && b.empty()) return out;
    if (a.empty()) return {b};
    if (b.empty()) return {a};
    const Interval inter{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    if (inter.empty()) return {a, b};
    if (a.lo < inter.lo) out.push_back({a.lo, inter.lo - 1});
    if (b.lo < inter.lo) out.push_back({b.lo, inter.lo - 1});
    if (a.hi > inter.hi) out.push_back({inter.hi + 1, a.hi});
    if (b.hi > inter.hi) out.push_back({inter.hi + 1, b.hi});
    return out;
}

Interval cone_interval(const ConeRegion& cone, std::size_t level) {
    if (level > cone.apex_level) return Interval{};  // above the apex
    const auto r = static_cast<std::ptrdiff_t>(cone.apex_level - level);
    const auto c = static_cast<std::ptrdiff_t>(cone.apex_index);
    return Interval{c - r, c + r};
}

// Shifted data density samples: |u0(x - tau)|^2 or |v0(x + tau)|^2 at a
// node, zero outside the window (compact-support convention).
double shifted_density(const std::vector<std::complex<double>>& f, std::ptrdiff_t index) {
    if (index < 0 || index >= static_cast<std::ptrdiff_t>(f.size())) return 0.0;
    return std::norm(f[static_cast<std::size_t>(index)]);
}

}  // namespace

double total_charge(const SpinorField& spinor, const GridSpec& grid) {
    double acc = 0.0;
    for (std::size_t i = 0; i < spinor.u.size(); ++i) {
        acc += std::norm(spinor.u[i]) + std::norm(spinor.v[i]);
    }
    return acc * grid.dx;
}

std::vector<double> charge_series(const RunHistory& history) {
    std::vector<double> series;
    series.reserve(history.levels());
    for (const auto& s : history.spinors) series.push_back(total_charge(s, history.grid));
    return series;
}

double max_charge_drift(const RunHistory& history) {
    const auto series = charge_series(history);
    if (series.empty()) return 0.0;
    const double q0 = series.front();
    double worst = 0.0;
    for (double q : series) worst = std::max(worst, std::abs(q - q0));
    return q0 > 0.0 ? worst / q0 : worst;
}

std::vector<double> cone_charge_series(const RunHistory& history, const ConeRegion& cone) {
    if (cone.apex_level >= history.levels()) {
        throw std::invalid_argument("cone_charge_series: cone apex beyond stored levels");
    }
    std::vector<double> series;
    series.reserve(cone.apex_level + 1);
    for (std::size_t level = 0; level <= cone.apex_level; ++level) {
        const Interval s = cone_interval(cone, level);
        const auto& sp = history.spinors[level];
        double acc = 0.0;
        if (s.hi > s.lo) {
            auto density = [&](std::ptrdiff_t i) {
                const auto j = static_cast<std::size_t>(i);
                return std::norm(sp.u[j]) + std::norm(sp.v[j]);
            };
            acc = 0.5 * density(s.lo) + 0.5 * density(s.hi);
            for (std::ptrdiff_t i = s.lo + 1; i < s.hi; ++i) acc += density(i);
        }
        series.push_back(acc * history.grid.dx);
    }
    return series;
}

double cone_monotonicity_violation(const RunHistory& history, const ConeRegion& cone) {
    const auto series = cone_charge_series(history, cone);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l + 1 < series.size(); ++l) {
        worst = std::max(worst, series[l + 1] - series[l]);
    }
    return series.size() < 2 ? 0.0 : worst;
}

double pointwise_bound_report(const RunHistory& history, std::size_t* skipped) {
    const GridSpec& g = history.grid;
    const auto rho0 = charge_density(history.data.u0, history.data.v0);
    const auto prefix = prefix_sums(rho0);

    double worst = -std::numeric_limits<double>::infinity();
    std::size_t skips = 0;
    for (std::size_t k = 0; k < history.levels(); ++k) {
        const double t = g.time(k);
        const double q = growth_factor(history.m, t);
        const double amp = std::exp(history.m * t);
        const auto& sp = history.spinors[k];
        for (std::size_t i = 0; i < g.nx; ++i) {
            if (i < k || i + k > g.nx - 1) {
                ++skips;
                continue;
            }
            const double base = trapezoid_prefix(prefix, rho0, i - k, i + k) * g.dx;
            const double mu =
                std::norm(sp.u[i]) - q * base - amp * std::norm(history.data.u0[i - k]);
            const double mv =
                std::norm(sp.v[i]) - q * base - amp * std::norm(history.data.v0[i + k]);
            worst = std::max(worst, std::max(mu, mv));
        }
    }
    if (skipped) *skipped = skips;
    return history.levels() == 0 ? 0.0 : worst;
}

double tail_report(const RunHistory& history, double M, std::size_t tau_level) {
    const GridSpec& g = history.grid;
    if (g.periodic()) throw std::invalid_argument("tail_report: requires zero-inflow boundaries");
    if (tau_level >= history.levels()) throw std::invalid_argument("tail_report: level out of range");
    const double tau = g.time(tau_level);
    if (!(M - tau > 0.0)) throw std::invalid_argument("tail_report: need M - tau > 0");
    if (M > std::max(g.xmax, -g.xmin)) {
        throw std::invalid_argument("tail_report: region |x| >= M outside the window");
    }

    // Trapezoid sum of f over the nodes with |x_i| >= level.
    auto region_sum = [&](auto&& f, double level) {
        const auto n = static_cast<std::ptrdiff_t>(g.nx);
        const auto iR = static_cast<std::ptrdiff_t>(std::ceil((level - g.xmin) / g.dx - 1e-9));
        const auto iL = static_cast<std::ptrdiff_t>(std::floor((-level - g.xmin) / g.dx + 1e-9));
        double acc = 0.0;
        if (iR <= n - 1) {
            const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(iR, 0);
            if (n - 1 > lo) {
                acc += 0.5 * f(lo) + 0.5 * f(n - 1);
                for (std::ptrdiff_t i = lo + 1; i < n - 1; ++i) acc += f(i);
            }
        }
        if (iL >= 0) {
            const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(iL, n - 1);
            if (hi > 0) {
                acc += 0.5 * f(0) + 0.5 * f(hi);
                for (std::ptrdiff_t i = 1; i < hi; ++i) acc += f(i);
            }
        }
        return acc * g.dx;
    };

    const auto& sp = history.spinors[tau_level];
    const auto& d = history.data;
    const double q = growth_factor(history.m, tau);
    const double amp = std::exp(history.m * tau);
    const auto shift = static_cast<std::ptrdiff_t>(tau_level);

    const double base_tail = region_sum(
        [&](std::ptrdiff_t i) {
            const auto j = static_cast<std::size_t>(i);
            return std::norm(d.u0[j]) + std::norm(d.v0[j]);
        },
        M - tau);

    const double lhs_u = region_sum(
        [&](std::ptrdiff_t i) { return std::norm(sp.u[static_cast<std::size_t>(i)]); }, M);
    const double rhs_u =
        2.0 * tau * q * base_tail +
        amp * region_sum([&](std::ptrdiff_t i) { return shifted_density(d.u0, i - shift); }, M);

    const double lhs_v = region_sum(
        [&](std::ptrdiff_t i) { return std::norm(sp.v[static_cast<std::size_t>(i)]); }, M);
    const double rhs_v =
        2.0 * tau * q * base_tail +
        amp * region_sum([&](std::ptrdiff_t i) { return shifted_density(d.v0, i + shift); }, M);

    return std::max(lhs_u - rhs_u, lhs_v - rhs_v);
}

double gauge_sup_report(const RunHistory& history) {
    const double T = history.grid.horizon();
    const double bound = history.bounds.C1 * (T + 1.0) + history.bounds.C0 * T;
    double sup = 0.0;
    for (const auto& lev : history.gauges) {
        sup = std::max(sup, sup_norm(lev.aplus));
        sup = std::max(sup, sup_norm(lev.aminus));
    }
    return sup - bound;
}

double lorentz_residual(const RunHistory& history) {
    const GridSpec& g = history.grid;
    if (history.levels() < 3) throw std::invalid_argument("lorentz_residual: need nt >= 2");
    const double inv2dt = 1.0 / (2.0 * g.dt);
    const double inv2dx = 1.0 / (2.0 * g.dx);

    auto a0_at = [&](std::size_t k, std::size_t i) {
        return 0.5 * (history.gauges[k].aplus[i] + history.gauges[k].aminus[i]);
    };
    auto a1_at = [&](std::size_t k, std::size_t i) {
        return 0.5 * (history.gauges[k].aplus[i] - history.gauges[k].aminus[i]);
    };

    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < history.levels(); ++k) {
        for (std::size_t i = 1; i + 1 < g.nx; ++i) {
            const double dt_a0 = (a0_at(k + 1, i) - a0_at(k - 1, i)) * inv2dt;
            const double dx_a1 = (a1_at(k, i + 1) - a1_at(k, i - 1)) * inv2dx;
            worst = std::max(worst, std::abs(dt_a0 - dx_a1));
        }
        if (g.periodic()) {
            for (std::size_t i : {std::size_t{0}, g.nx - 1}) {
                const std::size_t ip = g.wrap(static_cast<std::ptrdiff_t>(i) + 1);
                const std::size_t im = g.wrap(static_cast<std::ptrdiff_t>(i) - 1);
                const double dt_a0 = (a0_at(k + 1, i) - a0_at(k - 1, i)) * inv2dt;
                const double dx_a1 = (a1_at(k, ip) - a1_at(k, im)) * inv2dx;
                worst = std::max(worst, std::abs(dt_a0 - dx_a1));
            }
        }
    }
    return worst;
}

double local_conservation_residual(const RunHistory& history) {
    const GridSpec& g = history.grid;
    if (history.levels() < 3) {
        throw std::invalid_argument("local_conservation_residual: need nt >= 2");
    }
    const double inv2dt = 1.0 / (2.0 * g.dt);
    const double inv2dx = 1.0 / (2.0 * g.dx);

    auto rho = [&](std::size_t k, std::size_t i) {
        return std::norm(history.spinors[k].u[i]) + std::norm(history.spinors[k].v[i]);
    };
    auto flux = [&](std::size_t k, std::size_t i) {
        return std::norm(history.spinors[k].u[i]) - std::norm(history.spinors[k].v[i]);
    };

    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < history.levels(); ++k) {
        for (std::size_t i = 1; i + 1 < g.nx; ++i) {
            const double dt_rho = (rho(k + 1, i) - rho(k - 1, i)) * inv2dt;
            const double dx_flux = (flux(k, i + 1) - flux(k, i - 1)) * inv2dx;
            worst = std::max(worst, std::abs(dt_rho + dx_flux));
        }
        if (g.periodic()) {
            for (std::size_t i : {std::size_t{0}, g.nx - 1}) {
                const std::size_t ip = g.wrap(static_cast<std::ptrdiff_t>(i) + 1);
                const std::size_t im = g.wrap(static_cast<std::ptrdiff_t>(i) - 1);
                const double dt_rho = (rho(k + 1, i) - rho(k - 1, i)) * inv2dt;
                const double dx_flux = (flux(k, ip) - flux(k, im)) * inv2dx;
                worst = std::max(worst, std::abs(dt_rho + dx_flux));
            }
        }
    }
    return worst;
}

double cone_integral(const RunHistory& history, const ConeRegion& cone, char component) {
    if (cone.apex_level >= history.levels()) {
        throw std::invalid_argument("cone_integral: cone apex beyond stored levels");
    }
    if (component != 'u' && component != 'v') {
        throw std::invalid_argument("cone_integral: component must be 'u' or 'v'");
    }
    const GridSpec& g = history.grid;
    double acc = 0.0;
    for (std::size_t s = 0; s <= cone.apex_level; ++s) {
        const Interval iv = cone_interval(cone, s);
        if (iv.hi <= iv.lo) continue;  // apex slice has zero width
        const auto& sp = history.spinors[s];
        auto density = [&](std::ptrdiff_t i) {
            const auto j = static_cast<std::size_t>(i);
            return component == 'v' ? std::norm(sp.v[j]) : std::norm(sp.u[j]);
        };
        double slice = 0.5 * density(iv.lo) + 0.5 * density(iv.hi);
        for (std::ptrdiff_t i = iv.lo + 1; i < iv.hi; ++i) slice += density(i);
        acc += (s == 0 ? 0.5 : 1.0) * slice;
    }
    return acc * g.dx * g.dt;
}

double equicontinuity_margin(const RunHistory& history, const ConeRegion& cone_a,
                             const ConeRegion& cone_b) {
    const GridSpec& g = history.grid;
    if (cone_a.apex_level >= history.levels() || cone_b.apex_level >= history.levels()) {
        throw std::invalid_argument("equicontinuity_margin: cone beyond stored levels");
    }
    const double T = g.horizon();
    const double modulus = history.bounds.C0 * growth_factor(history.m, T) *
                           symmetric_difference_measure(cone_a, cone_b, g);
    const double amp = std::exp(history.m * T);

    // Transported-data charge over the symmetric-difference region,
    // slice by slice with the same time weights as cone_integral.
    auto omega_quad = [&](const std::vector<std::complex<double>>& f, int shift_sign) {
        const std::size_t top = std::max(cone_a.apex_level, cone_b.apex_level);
        double acc = 0.0;
        for (std::size_t s = 0; s <= top; ++s) {
            const auto pieces =
                interval_symmetric_difference(cone_interval(cone_a, s), cone_interval(cone_b, s));
            const auto shift = static_cast<std::ptrdiff_t>(s) * shift_sign;
            double slice = 0.0;
            for (const Interval& piece : pieces) {
                if (piece.hi <= piece.lo) continue;
                slice += 0.5 * shifted_density(f, piece.lo + shift);
                slice += 0.5 * shifted_density(f, piece.hi + shift);
                for (std::ptrdiff_t i = piece.lo + 1; i < piece.hi; ++i) {
                    slice += shifted_density(f, i + shift);
                }
            }
            acc += (s == 0 ? 0.5 : 1.0) * slice;
        }
        return acc * g.dx * g.dt;
    };

    const double lhs_u = std::abs(cone_integral(history, cone_a, 'u') -
                                  cone_integral(history, cone_b, 'u'));
    const double rhs_u = modulus + amp * omega_quad(history.data.u0, -1);
    const double lhs_v = std::abs(cone_integral(history, cone_a, 'v') -
                                  cone_integral(history, cone_b, 'v'));
    const double rhs_v = modulus + amp * omega_quad(history.data.v0, +1);
    return std::max(lhs_u - rhs_u, lhs_v - rhs_v);
}

DiagnosticsReport standard_report(const RunHistory& history) {
    const GridSpec& g = history.grid;
    DiagnosticsReport rep;
    rep.charge_series = charge_series(history);
    rep.max_charge_drift = max_charge_drift(history);
    rep.gauge_sup_margin = gauge_sup_report(history);
    rep.pointwise_margin = pointwise_bound_report(history);

    const std::size_t nt = history.levels() - 1;
    const std::size_t ic = g.nx / 2;
    const std::size_t max_h = std::min({nt, ic, g.nx - 1 - ic});

    std::vector<ConeRegion> cones;
    if (max_h >= 1) {
        cones.push_back(make_cone(g, ic, max_h));
        if (max_h >= 2) cones.push_back(make_cone(g, ic, max_h / 2));
        const std::size_t off = g.nx / 8;
        if (off > 0 && max_h / 2 >= 1 && ic + off + max_h / 2 <= g.nx - 1 &&
            ic >= off + max_h / 2) {
            cones.push_back(make_cone(g, ic + off, max_h / 2));
            cones.push_back(make_cone(g, ic - off, max_h / 2));
        }
    }

    double violation = cones.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
    for (const auto& cone : cones) {
        violation = std::max(violation, cone_monotonicity_violation(history, cone));
    }
    rep.cone_violations = violation;

    if (!cones.empty() && cones.front().apex_level >= 1) {
        const ConeRegion& c0 = cones.front();
        rep.equicontinuity_margins.push_back(
            equicontinuity_margin(history, c0, make_cone(g, c0.apex_index + 1, c0.apex_level)));
        if (c0.apex_level >= 2) {
            rep.equicontinuity_margins.push_back(equicontinuity_margin(
                history, c0, make_cone(g, c0.apex_index, c0.apex_level - 1)));
        }
    }

    if (!g.periodic() && g.xmin < 0.0 && g.xmax > 0.0 && nt >= 2) {
        const double M = 0.55 * std::min(g.xmax, -g.xmin);
        const auto tau_level =
            std::min(nt, static_cast<std::size_t>(std::floor(0.5 * M / g.dt)));
        if (tau_level >= 1 && M - g.time(tau_level) > 0.0) {
            rep.tail_margin = tail_report(history, M, tau_level);
        } else {
            rep.tail_margin = kNaN;
        }
    } else {
        rep.tail_margin = kNaN;
    }

    if (history.levels() >= 3) {
        rep.lorentz_residual = lorentz_residual(history);
        rep.local_conservation_residual = local_conservation_residual(history);
    } else {
        rep.lorentz_residual = kNaN;
        rep.local_conservation_residual = kNaN;
    }
    return rep;
}

}  // namespace mdlc
