#include "mdlc/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mdlc/numerics.hpp"

namespace mdlc {

namespace {

void require_same_length(std::initializer_list<std::size_t> sizes, const char* who) {
    auto it = sizes.begin();
    const std::size_t n = *it;
    for (; it != sizes.end(); ++it) {
        if (*it != n) throw std::invalid_argument(std::string(who) + ": array length mismatch");
    }
}

// The standard bump, zero outside |s| < 1.
double bump(double s) {
    const double r2 = s * s;
    if (r2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r2));
}

// Smooth monotone ramp: 0 for s <= 0, 1 for s >= 1.
double smoothstep(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

std::vector<double> convolve(const std::vector<double>& f, const std::vector<double>& kernel,
                             std::ptrdiff_t radius) {
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    std::vector<double> out(f.size(), 0.0);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::ptrdiff_t j = -radius; j <= radius; ++j) {
            const std::ptrdiff_t k = i - j;
            if (k < 0 || k >= n) continue;  // zero extension outside the window
            acc += kernel[static_cast<std::size_t>(j + radius)] * f[static_cast<std::size_t>(k)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

std::vector<std::complex<double>> convolve(const std::vector<std::complex<double>>& f,
                                           const std::vector<double>& kernel,
                                           std::ptrdiff_t radius) {
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    std::vector<std::complex<double>> out(f.size(), 0.0);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        std::complex<double> acc = 0.0;
        for (std::ptrdiff_t j = -radius; j <= radius; ++j) {
            const std::ptrdiff_t k = i - j;
            if (k < 0 || k >= n) continue;
            acc += kernel[static_cast<std::size_t>(j + radius)] * f[static_cast<std::size_t>(k)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

}  // namespace

InitialData from_psi(const std::vector<std::complex<double>>& psi1,
                     const std::vector<std::complex<double>>& psi2,
                     const std::vector<double>& a0_val,
                     const std::vector<double>& a1_val,
                     const std::vector<double>& a0_dot,
                     const std::vector<double>& a1_dot) {
    require_same_length({psi1.size(), psi2.size(), a0_val.size(), a1_val.size(),
                         a0_dot.size(), a1_dot.size()},
                        "from_psi");
    const std::size_t n = psi1.size();
    InitialData d;
    d.u0.resize(n);
    d.v0.resize(n);
    d.aplus0.resize(n);
    d.aplus1.resize(n);
    d.aminus0.resize(n);
    d.aminus1.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.u0[i] = psi1[i] + psi2[i];
        d.v0[i] = psi1[i] - psi2[i];
        d.aplus0[i] = a0_val[i] + a1_val[i];
        d.aminus0[i] = a0_val[i] - a1_val[i];
        d.aplus1[i] = a0_dot[i] + a1_dot[i];
        d.aminus1[i] = a0_dot[i] - a1_dot[i];
    }
    return d;
}

PsiForm to_psi(const std::vector<std::complex<double>>& u,
               const std::vector<std::complex<double>>& v,
               const std::vector<double>& aplus,
               const std::vector<double>& aminus) {
    require_same_length({u.size(), v.size(), aplus.size(), aminus.size()}, "to_psi");
    const std::size_t n = u.size();
    PsiForm p;
    p.psi1.resize(n);
    p.psi2.resize(n);
    p.A0.resize(n);
    p.A1.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.psi1[i] = 0.5 * (u[i] + v[i]);
        p.psi2[i] = 0.5 * (u[i] - v[i]);
        p.A0[i] = 0.5 * (aplus[i] + aminus[i]);
        p.A1[i] = 0.5 * (aplus[i] - aminus[i]);
    }
    return p;
}

double constraint_residual(const InitialData& data, const GridSpec& grid) {
    if (grid.nx < 3) throw std::invalid_argument("constraint_residual: need nx >= 3");
    if (data.size() != grid.nx) {
        throw std::invalid_argument("constraint_residual: data not sampled on grid");
    }
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < grid.nx; ++i) {
        const double a0_dot = 0.5 * (data.aplus1[i] + data.aminus1[i]);
        const double a1_right = 0.5 * (data.aplus0[i + 1] - data.aminus0[i + 1]);
        const double a1_left = 0.5 * (data.aplus0[i - 1] - data.aminus0[i - 1]);
        const double dxa1 = (a1_right - a1_left) / (2.0 * grid.dx);
        worst = std::max(worst, std::abs(a0_dot - dxa1));
    }
    return worst;
}

InitialData mollify(const InitialData& data, int n, const GridSpec& grid) {
    if (n < 1) throw std::invalid_argument("mollify: n must be >= 1");
    if (data.size() != grid.nx) throw std::invalid_argument("mollify: data not sampled on grid");
    const double radius = 1.0 / static_cast<double>(n);
    if (radius < 2.0 * grid.dx) {
        throw std::invalid_argument("mollify: kernel width 1/n below 2*dx");
    }

    const auto jr = static_cast<std::ptrdiff_t>(std::floor(radius / grid.dx));
    std::vector<double> kernel(static_cast<std::size_t>(2 * jr + 1));
    double mass = 0.0;
    for (std::ptrdiff_t j = -jr; j <= jr; ++j) {
        const double w = bump(static_cast<double>(j) * grid.dx / radius);
        kernel[static_cast<std::size_t>(j + jr)] = w;
        mass += w;
    }
    mass *= grid.dx;
    for (double& w : kernel) w /= mass;  // unit discrete mass
    for (double& w : kernel) w *= grid.dx;  // fold quadrature weight into the taps

    InitialData out;
    out.u0 = convolve(data.u0, kernel, jr);
    out.v0 = convolve(data.v0, kernel, jr);
    out.aplus0 = convolve(data.aplus0, kernel, jr);
    out.aplus1 = convolve(data.aplus1, kernel, jr);
    out.aminus0 = convolve(data.aminus0, kernel, jr);
    out.aminus1 = convolve(data.aminus1, kernel, jr);

    const double band = 2.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        const double cut = smoothstep((x - grid.xmin) / band) * smoothstep((grid.xmax - x) / band);
        out.u0[i] *= cut;
        out.v0[i] *= cut;
        out.aplus0[i] *= cut;
        out.aplus1[i] *= cut;
        out.aminus0[i] *= cut;
        out.aminus1[i] *= cut;
    }
    return out;
}

Preset preset_from_name(const std::string& name) {
    if (name == "zero") return Preset::Zero;
    if (name == "gaussian_packet") return Preset::GaussianPacket;
    if (name == "box") return Preset::Box;
    if (name == "uniform") return Preset::Uniform;
    throw std::invalid_argument("unknown preset: " + name);
}

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::Zero: return "zero";
        case Preset::GaussianPacket: return "gaussian_packet";
        case Preset::Box: return "box";
        case Preset::Uniform: return "uniform";
    }
    return "?";
}

InitialData make_preset(Preset preset, const PresetParams& params, const GridSpec& grid) {
    const std::size_t n = grid.nx;
    InitialData d;
    d.u0.assign(n, 0.0);
    d.v0.assign(n, 0.0);
    d.aplus0.assign(n, 0.0);
    d.aplus1.assign(n, 0.0);
    d.aminus0.assign(n, 0.0);
    d.aminus1.assign(n, 0.0);

    const std::complex<double> I(0.0, 1.0);
    switch (preset) {
        case Preset::Zero:
            break;
        case Preset::GaussianPacket: {
            if (!(params.width > 0.0)) {
                throw std::invalid_argument("gaussian_packet: width must be positive");
            }
            const double w2 = 2.0 * params.width * params.width;
            for (std::size_t i = 0; i < n; ++i) {
                const double x = grid.x(i);
                const double r = x - params.center;
                const double env = std::exp(-r * r / w2);
                d.u0[i] = params.amp_u * env * std::exp(I * (params.momentum * x));
                d.v0[i] = params.amp_v * env * std::exp(-I * (params.momentum * x));
                const double g = params.gauge_amp * env;
                // a+0 = +g, a-0 = -g puts the profile into A1 and keeps A0 zero.
                d.aplus0[i] = g;
                d.aminus0[i] = -g;
                if (params.constraint_satisfying) {
                    const double gprime = -2.0 * r / w2 * g;
                    d.aplus1[i] = gprime;
                    d.aminus1[i] = gprime;
                } else {
                    const double h = params.gauge_vel_amp * env;
                    d.aplus1[i] = h;
                    d.aminus1[i] = h;
                }
            }
            break;
        }
        case Preset::Box: {
            if (!(params.width > 0.0)) throw std::invalid_argument("box: width must be positive");
            for (std::size_t i = 0; i < n; ++i) {
                const double x = grid.x(i);
                const bool in = std::abs(x - params.center) <= 0.5 * params.width + 1e-12;
                if (!in) continue;
                d.u0[i] = params.amp_u;
                d.v0[i] = params.amp_v;
                d.aplus0[i] = params.gauge_amp;
                d.aminus0[i] = -params.gauge_amp;
                d.aplus1[i] = params.gauge_vel_amp;
                d.aminus1[i] = params.gauge_vel_amp;
            }
            break;
        }
        case Preset::Uniform: {
            if (params.momentum != 0.0) {
                throw std::invalid_argument("uniform: momentum phase would break uniformity");
            }
            const double g1 = params.constraint_satisfying ? 0.0 : params.gauge_vel_amp;
            for (std::size_t i = 0; i < n; ++i) {
                d.u0[i] = params.amp_u;
                d.v0[i] = params.amp_v;
                d.aplus0[i] = params.gauge_amp;
                d.aminus0[i] = params.gauge_amp;
                d.aplus1[i] = g1;
                d.aminus1[i] = g1;
            }
            break;
        }
    }
    return d;
}

double data_charge(const InitialData& data, const GridSpec& grid) {
    double acc = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        acc += std::norm(data.u0[i]) + std::norm(data.v0[i]);
    }
    return acc * grid.dx;
}

DataBounds compute_bounds(const InitialData& data, const GridSpec& grid) {
    DataBounds b;
    b.C0 = data_charge(data, grid);
    b.C1 = sup_norm(data.aplus0) + sup_norm(data.aplus1) + sup_norm(data.aminus0) +
           sup_norm(data.aminus1);
    return b;
}

InitialData load_initial_data_csv(const std::string& path, const GridSpec& grid) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open initial-data CSV: " + path);

    InitialData d;
    std::string line;
    bool header_seen = false;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // first non-comment line is the column header
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> cols;
        while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
        if (cols.size() != 9) {
            throw std::invalid_argument("initial-data CSV: expected 9 columns, got " +
                                        std::to_string(cols.size()));
        }
        if (row >= grid.nx) throw std::invalid_argument("initial-data CSV: more rows than nodes");
        if (std::abs(cols[0] - grid.x(row)) > 1e-9 * std::max(1.0, std::abs(cols[0]))) {
            throw std::invalid_argument("initial-data CSV: x column does not match the grid");
        }
        d.u0.emplace_back(cols[1], cols[2]);
        d.v0.emplace_back(cols[3], cols[4]);
        d.aplus0.push_back(cols[5]);
        d.aplus1.push_back(cols[6]);
        d.aminus0.push_back(cols[7]);
        d.aminus1.push_back(cols[8]);
        ++row;
    }
    if (row != grid.nx) {
        throw std::invalid_argument("initial-data CSV: row count does not match the grid");
    }
    return d;
}

void save_initial_data_csv(const std::string& path, const InitialData& data,
                           const GridSpec& grid) {
    if (data.size() != grid.nx) {
        throw std::invalid_argument("save_initial_data_csv: data not sampled on grid");
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write initial-data CSV: " + path);
    out << "x,re_u0,im_u0,re_v0,im_v0,aplus0,aplus1,aminus0,aminus1\n";
    char buf[512];
    for (std::size_t i = 0; i < grid.nx; ++i) {
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", grid.x(i),
                      data.u0[i].real(), data.u0[i].imag(), data.v0[i].real(),
                      data.v0[i].imag(), data.aplus0[i], data.aplus1[i], data.aminus0[i],
                      data.aminus1[i]);
        out << buf;
    }
}

}  // namespace mdlc
