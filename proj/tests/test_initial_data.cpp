#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <random>

#include "doctest.h"
#include "mdlc/initial_data.hpp"
#include "mdlc/numerics.hpp"

using namespace mdlc;
using cdouble = std::complex<double>;

namespace {

GridSpec unit_grid(double dx = 0.25) {
    return make_grid(-1.0, 1.0, dx, 0.0, Boundary::ZeroInflow);
}

double l2_distance(const std::vector<cdouble>& a, const std::vector<cdouble>& b, double dx) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
    return std::sqrt(acc * dx);
}

}  // namespace

TEST_CASE("from_psi sums and differences") {
    const GridSpec g = unit_grid();
    std::vector<cdouble> psi(g.nx, cdouble(0.3, -0.1));
    std::vector<double> ones(g.nx, 1.0), zeros(g.nx, 0.0);

    const InitialData d = from_psi(psi, psi, ones, zeros, zeros, zeros);
    for (std::size_t i = 0; i < g.nx; ++i) {
        CHECK(d.u0[i] == 2.0 * psi[i]);
        CHECK(d.v0[i] == cdouble(0.0, 0.0));
        CHECK(d.aplus0[i] == 1.0);
        CHECK(d.aminus0[i] == 1.0);
    }

    std::vector<cdouble> zc(g.nx, 0.0);
    const InitialData z = from_psi(zc, zc, zeros, zeros, zeros, zeros);
    CHECK(data_charge(z, g) == 0.0);

    std::vector<double> shorter(g.nx - 1, 0.0);
    CHECK_THROWS_AS(from_psi(psi, psi, shorter, zeros, zeros, zeros), std::invalid_argument);
}

TEST_CASE("to_psi inverts from_psi") {
    const GridSpec g = unit_grid();
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> pick(-1.0, 1.0);
    std::vector<cdouble> psi1(g.nx), psi2(g.nx);
    std::vector<double> a0v(g.nx), a1v(g.nx), a0d(g.nx), a1d(g.nx);
    for (std::size_t i = 0; i < g.nx; ++i) {
        psi1[i] = cdouble(pick(rng), pick(rng));
        psi2[i] = cdouble(pick(rng), pick(rng));
        a0v[i] = pick(rng);
        a1v[i] = pick(rng);
        a0d[i] = pick(rng);
        a1d[i] = pick(rng);
    }
    const InitialData d = from_psi(psi1, psi2, a0v, a1v, a0d, a1d);
    const PsiForm p = to_psi(d.u0, d.v0, d.aplus0, d.aminus0);
    for (std::size_t i = 0; i < g.nx; ++i) {
        CHECK(std::abs(p.psi1[i] - psi1[i]) <= 4e-16 * (1.0 + std::abs(psi1[i])));
        CHECK(std::abs(p.psi2[i] - psi2[i]) <= 4e-16 * (1.0 + std::abs(psi2[i])));
        CHECK(p.A0[i] == doctest::Approx(a0v[i]));
        CHECK(p.A1[i] == doctest::Approx(a1v[i]));
    }

    // u = v collapses psi2; equal light-cone components collapse A1.
    const PsiForm q = to_psi(d.u0, d.u0, std::vector<double>(g.nx, 0.7),
                             std::vector<double>(g.nx, 0.7));
    for (std::size_t i = 0; i < g.nx; ++i) {
        CHECK(q.psi2[i] == cdouble(0.0, 0.0));
        CHECK(q.A0[i] == doctest::Approx(0.7));
        CHECK(q.A1[i] == 0.0);
    }
}

TEST_CASE("constraint_residual on exact profiles") {
    const GridSpec g = unit_grid();
    InitialData d = make_preset(Preset::Zero, {}, g);
    CHECK(constraint_residual(d, g) == 0.0);

    // Constant A1(x,0) with zero gauge velocity also has no residual.
    for (std::size_t i = 0; i < g.nx; ++i) {
        d.aplus0[i] = 0.7;
        d.aminus0[i] = -0.7;
    }
    CHECK(constraint_residual(d, g) == 0.0);

    // A1(x,0) = x with unit gauge velocity on A0: centered differences of a
    // linear profile are exact, so the residual vanishes.
    for (std::size_t i = 0; i < g.nx; ++i) {
        const double x = g.x(i);
        d.aplus0[i] = x;    // A1 = (a+0 - a-0)/2 = x
        d.aminus0[i] = -x;
        d.aplus1[i] = 1.0;  // dA0/dt = (a+1 + a-1)/2 = 1
        d.aminus1[i] = 1.0;
    }
    CHECK(constraint_residual(d, g) == doctest::Approx(0.0));

    // A1(x,0) = x^2 with zero gauge velocity: the residual is max |2x|
    // over the interior nodes.
    double expected = 0.0;
    for (std::size_t i = 1; i + 1 < g.nx; ++i) expected = std::max(expected, std::abs(2.0 * g.x(i)));
    for (std::size_t i = 0; i < g.nx; ++i) {
        const double x = g.x(i);
        d.aplus0[i] = x * x;
        d.aminus0[i] = -x * x;
        d.aplus1[i] = 0.0;
        d.aminus1[i] = 0.0;
    }
    CHECK(constraint_residual(d, g) == doctest::Approx(expected));
    CHECK(expected == doctest::Approx(1.5));  // interior max on this grid
}

TEST_CASE("presets") {
    const GridSpec g = make_grid(-2.0, 2.0, 0.015625, 0.0, Boundary::ZeroInflow);

    const InitialData zero = make_preset(Preset::Zero, {}, g);
    CHECK(data_charge(zero, g) == 0.0);

    PresetParams box;
    box.amp_u = 1.0;
    box.width = 1.0;
    const InitialData b = make_preset(Preset::Box, box, g);
    CHECK(std::abs(data_charge(b, g) - 1.0) <= 1.0 * g.dx + 1e-12);

    PresetParams gp;
    gp.amp_u = 0.0;
    gp.amp_v = 0.0;
    gp.width = 0.25;
    const InitialData quiet = make_preset(Preset::GaussianPacket, gp, g);
    CHECK(data_charge(quiet, g) == 0.0);

    gp.width = -1.0;
    CHECK_THROWS_AS(make_preset(Preset::GaussianPacket, gp, g), std::invalid_argument);
    CHECK_THROWS_AS(preset_from_name("does_not_exist"), std::invalid_argument);
    CHECK(preset_from_name("box") == Preset::Box);
}

TEST_CASE("compute_bounds") {
    const GridSpec g = make_grid(-2.0, 2.0, 0.015625, 0.0, Boundary::ZeroInflow);
    const DataBounds zb = compute_bounds(make_preset(Preset::Zero, {}, g), g);
    CHECK(zb.C0 == 0.0);
    CHECK(zb.C1 == 0.0);

    PresetParams box;
    box.amp_u = 1.0;
    box.width = 1.0;
    const DataBounds bb = compute_bounds(make_preset(Preset::Box, box, g), g);
    CHECK(std::abs(bb.C0 - 1.0) <= g.dx + 1e-12);

    InitialData d = make_preset(Preset::Zero, {}, g);
    for (auto& x : d.aplus0) x = 1.0;
    const DataBounds cb = compute_bounds(d, g);
    CHECK(cb.C1 == doctest::Approx(1.0));
}

TEST_CASE("mollify smooths and never inflates the bounds") {
    const GridSpec g = make_grid(-2.0, 2.0, 1.0 / 256.0, 0.0, Boundary::ZeroInflow);
    PresetParams box;
    box.amp_u = 1.0;
    box.amp_v = 0.5;
    box.width = 1.0;
    box.gauge_amp = 0.8;
    box.gauge_vel_amp = 0.3;
    const InitialData rough = make_preset(Preset::Box, box, g);
    const DataBounds bounds = compute_bounds(rough, g);

    const InitialData zeroed = mollify(make_preset(Preset::Zero, {}, g), 8, g);
    CHECK(data_charge(zeroed, g) == 0.0);

    // L2 data error decreases monotonically along the smoothing chain.
    double prev_err = -1.0;
    for (int n : {4, 8, 16, 32}) {
        const InitialData smooth = mollify(rough, n, g);
        CHECK(data_charge(smooth, g) <= bounds.C0 * (1.0 + 1e-12));
        const DataBounds sb = compute_bounds(smooth, g);
        CHECK(sb.C1 <= 2.0 * bounds.C1 + 1e-12);
        CHECK(sup_norm(smooth.aplus0) <= sup_norm(rough.aplus0) + 1e-12);
        const double err = l2_distance(smooth.u0, rough.u0, g.dx);
        if (prev_err >= 0.0) CHECK(err < prev_err);
        prev_err = err;
    }

    // Successive smoothed iterates form a Cauchy-like chain.
    double prev_gap = -1.0;
    InitialData last = mollify(rough, 4, g);
    for (int n : {8, 16, 32, 64}) {
        const InitialData next = mollify(rough, n, g);
        const double gap = l2_distance(next.u0, last.u0, g.dx);
        if (prev_gap >= 0.0) CHECK(gap < prev_gap);
        prev_gap = gap;
        last = next;
    }

    CHECK_THROWS_AS(mollify(rough, 1000, g), std::invalid_argument);
    CHECK_THROWS_AS(mollify(rough, 0, g), std::invalid_argument);
}

TEST_CASE("initial data CSV round trip") {
    const GridSpec g = make_grid(-1.0, 1.0, 0.125, 0.0, Boundary::ZeroInflow);
    PresetParams gp;
    gp.amp_u = 0.9;
    gp.amp_v = 0.4;
    gp.width = 0.3;
    gp.momentum = 2.0;
    gp.gauge_amp = 0.6;
    gp.constraint_satisfying = true;
    const InitialData d = make_preset(Preset::GaussianPacket, gp, g);

    const auto path = std::filesystem::temp_directory_path() / "mdlc_data_roundtrip.csv";
    save_initial_data_csv(path.string(), d, g);
    const InitialData r = load_initial_data_csv(path.string(), g);
    for (std::size_t i = 0; i < g.nx; ++i) {
        CHECK(r.u0[i] == d.u0[i]);
        CHECK(r.v0[i] == d.v0[i]);
        CHECK(r.aplus0[i] == d.aplus0[i]);
        CHECK(r.aplus1[i] == d.aplus1[i]);
        CHECK(r.aminus0[i] == d.aminus0[i]);
        CHECK(r.aminus1[i] == d.aminus1[i]);
    }
    std::filesystem::remove(path);

    const GridSpec other = make_grid(-1.0, 1.0, 0.25, 0.0, Boundary::ZeroInflow);
    save_initial_data_csv(path.string(), d, g);
    CHECK_THROWS_AS(load_initial_data_csv(path.string(), other), std::invalid_argument);
    std::filesystem::remove(path);
}
