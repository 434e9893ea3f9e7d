#include "mdlc/dirac_step.hpp"

#include <cmath>
#include <stdexcept>

namespace mdlc {

namespace {

inline std::pair<std::complex<double>, std::complex<double>> rotate_pair(
    std::complex<double> u, std::complex<double> v, double c, double s) {
    const std::complex<double> is(0.0, s);
    return {c * u + is * v, is * u + c * v};
}

}  // namespace

std::pair<std::complex<double>, std::complex<double>> mass_rotation(std::complex<double> u,
                                                                    std::complex<double> v,
                                                                    double m, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("mass_rotation: dt must be positive");
    return rotate_pair(u, v, std::cos(m * dt), std::sin(m * dt));
}

std::complex<double> gauge_phase(std::complex<double> w, double A, double dt) {
    return std::polar(1.0, A * dt) * w;
}

SpinorField step_spinor(const SpinorField& spinor, const GaugeField& gauge,
                        const GridSpec& grid, const SpinorStepConfig& cfg) {
    const std::size_t n = grid.nx;
    if (n < 2) throw std::invalid_argument("step_spinor: grid too narrow for transport");
    if (spinor.u.size() != n || spinor.v.size() != n) {
        throw std::invalid_argument("step_spinor: spinor not sampled on grid");
    }
    if (gauge.aplus_prev.size() != n || gauge.aplus_curr.size() != n ||
        gauge.aminus_prev.size() != n || gauge.aminus_curr.size() != n) {
        throw std::invalid_argument("step_spinor: gauge not sampled on grid");
    }
    if (gauge.level != spinor.level + 1) {
        throw std::invalid_argument("step_spinor: gauge must hold levels k and k+1");
    }

    const double half = 0.5 * grid.dt;
    const double ch = std::cos(cfg.m * half);
    const double sh = std::sin(cfg.m * half);
    const bool wrap = grid.periodic();

    // Departure stage at level k: half gauge phase, then half mass rotation,
    // both at the departure node. The fault hook scales this rotation, so a
    // corrupted run loses unitarity by exactly rotation_scale per step.
    std::vector<std::complex<double>> us(n), vs(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::complex<double> up = gauge_phase(spinor.u[j], gauge.aplus_prev[j], half);
        const std::complex<double> vp = gauge_phase(spinor.v[j], gauge.aminus_prev[j], half);
        auto [ur, vr] = rotate_pair(up, vp, ch * cfg.rotation_scale, sh * cfg.rotation_scale);
        us[j] = ur;
        vs[j] = vr;
    }

    SpinorField next;
    next.level = spinor.level + 1;
    next.u.resize(n);
    next.v.resize(n);

    // Arrival stage at level k+1: exact transport (u from the left, v from
    // the right), the second half rotation, then the half gauge phase with
    // the new-level values at the arrival node.
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> ut = 0.0;
        if (i > 0) {
            ut = us[i - 1];
        } else if (wrap) {
            ut = us[n - 1];
        }
        std::complex<double> vt = 0.0;
        if (i + 1 < n) {
            vt = vs[i + 1];
        } else if (wrap) {
            vt = vs[0];
        }

        auto [ur, vr] = rotate_pair(ut, vt, ch, sh);

        next.u[i] = gauge_phase(ur, gauge.aplus_curr[i], half);
        next.v[i] = gauge_phase(vr, gauge.aminus_curr[i], half);
    }
    return next;
}

}  // namespace mdlc
