#pragma once

#include <complex>
#include <string>
#include <vector>

#include "mdlc/grid.hpp"

namespace mdlc {

/// Initial data for the reduced light-cone system: spinor pair (u0, v0)
/// plus gauge values and gauge velocities for A+ and A-.
struct InitialData {
    std::vector<std::complex<double>> u0;
    std::vector<std::complex<double>> v0;
    std::vector<double> aplus0;   // A+(x, 0)
    std::vector<double> aplus1;   // d/dt A+(x, 0)
    std::vector<double> aminus0;  // A-(x, 0)
    std::vector<double> aminus1;  // d/dt A-(x, 0)

    std::size_t size() const { return u0.size(); }
};

/// A-priori data bounds: C0 dominates the discrete charge, C1 is the
/// four-term sum of gauge-data sup norms.
struct DataBounds {
    double C0 = 0.0;
    double C1 = 0.0;
};

/// Covariant-form fields recovered from the light-cone variables.
struct PsiForm {
    std::vector<std::complex<double>> psi1;
    std::vector<std::complex<double>> psi2;
    std::vector<double> A0;
    std::vector<double> A1;
};

/// Linear change of variables u = psi1 + psi2, v = psi1 - psi2,
/// a_pm^j = a_0^j +- a_1^j. a0_val/a1_val are the A0/A1 values at t = 0,
/// a0_dot/a1_dot their time derivatives.
InitialData from_psi(const std::vector<std::complex<double>>& psi1,
                     const std::vector<std::complex<double>>& psi2,
                     const std::vector<double>& a0_val,
                     const std::vector<double>& a1_val,
                     const std::vector<double>& a0_dot,
                     const std::vector<double>& a1_dot);

/// Inverse of from_psi: psi1 = (u+v)/2, psi2 = (u-v)/2,
/// A0 = (A+ + A-)/2, A1 = (A+ - A-)/2.
PsiForm to_psi(const std::vector<std::complex<double>>& u,
               const std::vector<std::complex<double>>& v,
               const std::vector<double>& aplus,
               const std::vector<double>& aminus);

/// Max over interior nodes of |dA0/dt(x,0) - d/dx A1(x,0)| with centered
/// differences, the gauge-constraint residual of the data.
double constraint_residual(const InitialData& data, const GridSpec& grid);

/// Convolution with the compactly supported bump exp(-1/(1-s^2)) of
/// radius 1/n (normalized to unit discrete mass), then a smooth cutoff
/// equal to 1 on [xmin + 2/n, xmax - 2/n]. Never increases the charge
/// and never raises gauge sup norms.
InitialData mollify(const InitialData& data, int n, const GridSpec& grid);

enum class Preset { Zero, GaussianPacket, Box, Uniform };

Preset preset_from_name(const std::string& name);
std::string preset_name(Preset p);

struct PresetParams {
    double amp_u = 0.0;      // spinor amplitudes (uniform: the constant values)
    double amp_v = 0.0;
    double center = 0.0;     // envelope center (gaussian, box)
    double width = 1.0;      // gaussian std dev / box full width
    double momentum = 0.0;   // phase wavenumber: u0 ~ e^{ikx}, v0 ~ e^{-ikx}
    double gauge_amp = 0.0;      // A1(x,0) profile amplitude (a+0 = +g, a-0 = -g)
    double gauge_vel_amp = 0.0;  // gauge velocity amplitude when not constraint-derived
    // When set, gauge velocities are derived from the analytic profile
    // derivative so that dA0/dt(x,0) = d/dx A1(x,0) holds exactly.
    bool constraint_satisfying = false;
};

InitialData make_preset(Preset preset, const PresetParams& params, const GridSpec& grid);

/// Discrete charge sum(|u0|^2 + |v0|^2) dx of the data.
double data_charge(const InitialData& data, const GridSpec& grid);

/// C0 = discrete charge, C1 = sup|a+0| + sup|a+1| + sup|a-0| + sup|a-1|.
DataBounds compute_bounds(const InitialData& data, const GridSpec& grid);

/// CSV exchange format, columns:
/// x, re_u0, im_u0, re_v0, im_v0, aplus0, aplus1, aminus0, aminus1.
InitialData load_initial_data_csv(const std::string& path, const GridSpec& grid);
void save_initial_data_csv(const std::string& path, const InitialData& data,
                           const GridSpec& grid);

}  // namespace mdlc
