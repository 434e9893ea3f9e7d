#include <cmath>
#include <complex>

#include "doctest.h"
#include "mdlc/diagnostics.hpp"
#include "mdlc/experiments.hpp"
#include "support/test_fields.hpp"

using namespace mdlc;
using cdouble = std::complex<double>;

namespace {

PresetParams packet(double amp_u, double amp_v, double width, double momentum = 0.0,
                    double gauge_amp = 0.0, double gauge_vel = 0.0) {
    PresetParams p;
    p.amp_u = amp_u;
    p.amp_v = amp_v;
    p.width = width;
    p.momentum = momentum;
    p.gauge_amp = gauge_amp;
    p.gauge_vel_amp = gauge_vel;
    return p;
}

}  // namespace

TEST_CASE("total_charge basics") {
    const GridSpec g = make_grid(-2.0, 2.0, 1.0 / 128.0, 0.0, Boundary::ZeroInflow);
    SpinorField zero;
    zero.u.assign(g.nx, 0.0);
    zero.v.assign(g.nx, 0.0);
    CHECK(total_charge(zero, g) == 0.0);

    PresetParams box;
    box.amp_u = 1.0;
    box.width = 1.0;
    const InitialData bd = make_preset(Preset::Box, box, g);
    SpinorField s{bd.u0, bd.v0, 0};
    CHECK(std::abs(total_charge(s, g) - 1.0) <= g.dx + 1e-12);
}

TEST_CASE("charge is conserved along periodic runs") {
    const GridSpec g = make_grid(-2.0, 2.0, 1.0 / 128.0, 1.0, Boundary::Periodic);
    const InitialData d = make_preset(Preset::GaussianPacket, packet(1.0, 0.4, 0.2, 3.0, 0.5), g);
    const RunHistory h = run_simulation(d, g, 1.0);
    CHECK(max_charge_drift(h) <= 1e-13);
}

TEST_CASE("cone charge series") {
    const GridSpec g = make_grid(-4.0, 4.0, 1.0 / 64.0, 1.0, Boundary::ZeroInflow);

    // Zero field: identically zero series.
    const RunHistory zero = run_simulation(make_preset(Preset::Zero, {}, g), g, 1.0);
    const ConeRegion cone = cone_at(g, 0.0, 0.5);
    for (double q : cone_charge_series(zero, cone)) CHECK(q == 0.0);

    // Data supported entirely outside the cone base never enters the cone.
    PresetParams off = packet(1.0, 0.5, 0.02);
    off.center = -2.0;
    const RunHistory outside = run_simulation(make_preset(Preset::GaussianPacket, off, g), g, 0.5);
    for (double q : cone_charge_series(outside, cone)) CHECK(q <= 1e-14);

    // Free transport of a box inside the base: non-increasing series.
    PresetParams box;
    box.amp_u = 1.0;
    box.amp_v = 0.5;
    box.width = 0.5;
    const RunHistory free_run = run_simulation(make_preset(Preset::Box, box, g), g, 0.0);
    const auto series = cone_charge_series(free_run, cone_at(g, 0.0, 1.0));
    for (std::size_t l = 0; l + 1 < series.size(); ++l) {
        CHECK(series[l + 1] <= series[l] + 1e-12);
    }
    CHECK(cone_monotonicity_violation(free_run, cone_at(g, 0.0, 1.0)) <= 1e-12);
}

TEST_CASE("cone monotonicity across masses") {
    const GridSpec g = make_grid(-2.0, 2.0, 1.0 / 64.0, 0.75, Boundary::ZeroInflow);
    const InitialData d =
        make_preset(Preset::GaussianPacket, packet(1.0, 0.6, 0.15, 2.0, 0.4, 0.2), g);
    for (double m : {0.0, 0.5, 1.0, 2.0}) {
        const RunHistory h = run_simulation(d, g, m);
        for (const ConeRegion& cone :
             {cone_at(g, 0.0, 0.75), cone_at(g, 0.25, 0.5), cone_at(g, -0.5, 0.25)}) {
            CHECK(cone_monotonicity_violation(h, cone) <= 1e-12);
        }
    }
}

TEST_CASE("pointwise bound is exact at zero mass") {
    const GridSpec g = make_grid(-3.0, 3.0, 1.0 / 128.0, 0.5, Boundary::ZeroInflow);
    const InitialData d =
        make_preset(Preset::GaussianPacket, packet(1.0, 0.7, 0.2, 2.0, 0.8, 0.5), g);
    const RunHistory h = run_simulation(d, g, 0.0);
    std::size_t skipped = 0;
    CHECK(pointwise_bound_report(h, &skipped) <= 1e-12);
    CHECK(skipped > 0);  // late-level nodes near the edges lose their cones

    const RunHistory z = run_simulation(make_preset(Preset::Zero, {}, g), g, 0.0);
    CHECK(pointwise_bound_report(z) == 0.0);
}

TEST_CASE("pointwise bound margin stays O(dx) for m > 0") {
    std::vector<double> margins;
    for (double dx : {1.0 / 64.0, 1.0 / 128.0}) {
        const GridSpec g = make_grid(-3.0, 3.0, dx, 0.5, Boundary::ZeroInflow);
        const InitialData d =
            make_preset(Preset::GaussianPacket, packet(1.0, 0.7, 0.2, 2.0, 0.4, 0.0), g);
        margins.push_back(pointwise_bound_report(run_simulation(d, g, 1.0)));
    }
    for (std::size_t j = 0; j < margins.size(); ++j) {
        CHECK(margins[j] <= (j == 0 ? 1.0 / 64.0 : 1.0 / 128.0) * 1.0);
    }
}

TEST_CASE("tail estimate") {
    const GridSpec g = make_grid(-2.0, 2.0, 1.0 / 64.0, 0.5, Boundary::ZeroInflow);
    const std::size_t tau_level = g.nt / 2;  // tau = 0.25
    const double M = 1.0;

    const RunHistory z = run_simulation(make_preset(Preset::Zero, {}, g), g, 1.0);
    CHECK(tail_report(z, M, tau_level) == 0.0);

    // Data well inside |x| <= M - tau: finite speed keeps the tail empty.
    const InitialData d = make_preset(Preset::GaussianPacket, packet(1.0, 0.5, 0.08), g);
    const RunHistory h = run_simulation(d, g, 1.0);
    CHECK(tail_report(h, M, tau_level) <= 0.0);

    CHECK_THROWS_AS(tail_report(h, 0.1, tau_level), std::invalid_argument);  // M - tau <= 0
    CHECK_THROWS_AS(tail_report(h, 3.0, tau_level), std::invalid_argument);

    // A box straddling |x| = M - tau keeps the margin within O(dx).
    PresetParams straddle;
    straddle.amp_u = 1.0;
    straddle.width = 1.6;
    const RunHistory hs = run_simulation(make_preset(Preset::Box, straddle, g), g, 1.0);
    CHECK(tail_report(hs, M, tau_level) <= 2.0 * g.dx);
}

TEST_CASE("gauge sup bound") {
    const GridSpec g = make_grid(-3.0, 3.0, 1.0 / 64.0, 0.75, Boundary::ZeroInflow);

    const RunHistory z = run_simulation(make_preset(Preset::Zero, {}, g), g, 1.0);
    CHECK(gauge_sup_report(z) == 0.0);  // zero bound, zero fields

    // Source-free gauge waves stay below C1 (T + 1).
    PresetParams wave = packet(0.0, 0.0, 0.2, 0.0, 0.7, 0.3);
    const RunHistory hw = run_simulation(make_preset(Preset::GaussianPacket, wave, g), g, 0.0);
    CHECK(gauge_sup_report(hw) <= 0.0);

    // Full coupled run.
    const InitialData d =
        make_preset(Preset::GaussianPacket, packet(1.0, 0.6, 0.15, 2.0, 0.5, 0.2), g);
    CHECK(gauge_sup_report(run_simulation(d, g, 1.0)) <= 0.0);
}

TEST_CASE("lorentz residual on exact linear fields") {
    const GridSpec g = make_grid(-1.0, 1.0, 0.125, 0.5, Boundary::ZeroInflow);
    RunHistory h;
    h.grid = g;
    h.m = 0.0;
    // A0 = t and A1 = x sampled exactly; centered differences hit 1 - 1 = 0.
    for (std::size_t k = 0; k <= g.nt; ++k) {
        GaugeLevel lev;
        lev.aplus.resize(g.nx);
        lev.aminus.resize(g.nx);
        SpinorField sp;
        sp.level = k;
        sp.u.assign(g.nx, 0.0);
        sp.v.assign(g.nx, 0.0);
        for (std::size_t i = 0; i < g.nx; ++i) {
            lev.aplus[i] = g.time(k) + g.x(i);
            lev.aminus[i] = g.time(k) - g.x(i);
        }
        h.gauges.push_back(lev);
        h.spinors.push_back(sp);
    }
    CHECK(lorentz_residual(h) <= 1e-14);

    for (auto& lev : h.gauges) {
        std::fill(lev.aplus.begin(), lev.aplus.end(), 0.0);
        std::fill(lev.aminus.begin(), lev.aminus.end(), 0.0);
    }
    CHECK(lorentz_residual(h) == 0.0);
}

TEST_CASE("local conservation residual") {
    const GridSpec g = make_grid(0.0, 1.0, 1.0 / 64.0, 0.5, Boundary::Periodic);

    const RunHistory z = run_simulation(make_preset(Preset::Zero, {}, g), g, 1.0);
    CHECK(local_conservation_residual(z) == 0.0);

    // Uniform rotation run: density and flux are spatially uniform and the
    // density is constant in time, so the centered residual is rounding.
    PresetParams uniform;
    uniform.amp_u = 1.0;
    uniform.amp_v = 0.0;
    const RunHistory hu = run_simulation(make_preset(Preset::Uniform, uniform, g), g, 1.0);
    CHECK(local_conservation_residual(hu) <= 1e-12);
}

TEST_CASE("local conservation residual refines at second order") {
    PresetParams p = packet(1.0, 0.6, 0.2, 2.0, 0.4, 0.0);
    std::vector<double> residuals;
    for (double dx : {1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0}) {
        const GridSpec g = make_grid(-3.0, 3.0, dx, 0.5, Boundary::ZeroInflow);
        const RunHistory h =
            run_simulation(make_preset(Preset::GaussianPacket, p, g), g, 1.0);
        residuals.push_back(local_conservation_residual(h));
    }
    for (std::size_t j = 0; j + 1 < residuals.size(); ++j) {
        CHECK(std::log2(residuals[j] / residuals[j + 1]) >= 1.9);
    }
}

TEST_CASE("equicontinuity margins") {
    const GridSpec g = make_grid(-2.0, 2.0, 1.0 / 64.0, 0.75, Boundary::ZeroInflow);
    const InitialData d =
        make_preset(Preset::GaussianPacket, packet(1.0, 0.6, 0.15, 2.0, 0.4, 0.0), g);
    const RunHistory h = run_simulation(d, g, 1.0);

    const ConeRegion c0 = cone_at(g, 0.0, 0.5);
    CHECK(equicontinuity_margin(h, c0, c0) <= 0.0);

    const RunHistory z = run_simulation(make_preset(Preset::Zero, {}, g), g, 1.0);
    CHECK(equicontinuity_margin(z, c0, cone_at(g, 0.25, 0.5)) <= 0.0);

    // One-node apex separations stay within O(dx), and margins shrink as
    // the cones merge.
    const ConeRegion shifted = make_cone(g, c0.apex_index + 1, c0.apex_level);
    CHECK(equicontinuity_margin(h, c0, shifted) <= 2.0 * g.dx);
    const double far = equicontinuity_margin(h, c0, make_cone(g, c0.apex_index + 8, c0.apex_level));
    const double near = equicontinuity_margin(h, c0, shifted);
    CHECK(near <= std::max(far, 2.0 * g.dx));
}

TEST_CASE("standard report wiring") {
    const GridSpec g = make_grid(-2.0, 2.0, 1.0 / 64.0, 0.5, Boundary::ZeroInflow);
    const InitialData d =
        make_preset(Preset::GaussianPacket, packet(1.0, 0.5, 0.15, 1.0, 0.3, 0.1), g);
    const RunHistory h = run_simulation(d, g, 1.0);
    const DiagnosticsReport rep = standard_report(h);
    CHECK(rep.charge_series.size() == h.levels());
    CHECK(rep.max_charge_drift <= 1e-13);
    CHECK(rep.cone_violations <= 1e-12);
    CHECK(rep.pointwise_margin <= 1.0 * g.dx);
    CHECK(!rep.equicontinuity_margins.empty());
    CHECK(std::isfinite(rep.gauge_sup_margin));
    CHECK(std::isfinite(rep.tail_margin));
    CHECK(std::isfinite(rep.lorentz_residual));
    CHECK(std::isfinite(rep.local_conservation_residual));
}
