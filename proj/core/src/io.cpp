#include "mdlc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace mdlc {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    return out;
}

// Per-level residual profiles for the series file; NaN at levels where the
// centered stencils are undefined.
double level_lorentz(const RunHistory& h, std::size_t k) {
    const GridSpec& g = h.grid;
    if (k == 0 || k + 1 >= h.levels()) return std::numeric_limits<double>::quiet_NaN();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < g.nx; ++i) {
        const double dt_a0 = (h.gauges[k + 1].aplus[i] + h.gauges[k + 1].aminus[i] -
                              h.gauges[k - 1].aplus[i] - h.gauges[k - 1].aminus[i]) /
                             (4.0 * g.dt);
        const double dx_a1 = (h.gauges[k].aplus[i + 1] - h.gauges[k].aminus[i + 1] -
                              h.gauges[k].aplus[i - 1] + h.gauges[k].aminus[i - 1]) /
                             (4.0 * g.dx);
        worst = std::max(worst, std::abs(dt_a0 - dx_a1));
    }
    return worst;
}

double level_local_conservation(const RunHistory& h, std::size_t k) {
    const GridSpec& g = h.grid;
    if (k == 0 || k + 1 >= h.levels()) return std::numeric_limits<double>::quiet_NaN();
    auto rho = [&](std::size_t kk, std::size_t i) {
        return std::norm(h.spinors[kk].u[i]) + std::norm(h.spinors[kk].v[i]);
    };
    auto flux = [&](std::size_t kk, std::size_t i) {
        return std::norm(h.spinors[kk].u[i]) - std::norm(h.spinors[kk].v[i]);
    };
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < g.nx; ++i) {
        const double a = (rho(k + 1, i) - rho(k - 1, i)) / (2.0 * g.dt);
        const double b = (flux(k, i + 1) - flux(k, i - 1)) / (2.0 * g.dx);
        worst = std::max(worst, std::abs(a + b));
    }
    return worst;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_snapshot_csv(const std::string& path, const RunHistory& history, std::size_t level,
                        const std::string& provenance) {
    if (level >= history.levels()) {
        throw std::invalid_argument("write_snapshot_csv: level out of range");
    }
    auto out = open_out(path);
    out << "# " << provenance << " level=" << level
        << " t=" << format_double(history.grid.time(level)) << "\n";
    out << "x,re_u,im_u,re_v,im_v,aplus,aminus\n";
    const auto& sp = history.spinors[level];
    const auto& ga = history.gauges[level];
    for (std::size_t i = 0; i < history.grid.nx; ++i) {
        out << format_double(history.grid.x(i)) << ',' << format_double(sp.u[i].real()) << ','
            << format_double(sp.u[i].imag()) << ',' << format_double(sp.v[i].real()) << ','
            << format_double(sp.v[i].imag()) << ',' << format_double(ga.aplus[i]) << ','
            << format_double(ga.aminus[i]) << '\n';
    }
}

void write_series_csv(const std::string& path, const RunHistory& history,
                      const DiagnosticsReport& report, const std::string& provenance) {
    auto out = open_out(path);
    out << "# " << provenance << "\n";
    out << "level,t,charge,cone_charge,lorentz_residual,local_conservation_residual\n";

    // Cone series for the widest centered cone the run supports.
    const GridSpec& g = history.grid;
    const std::size_t ic = g.nx / 2;
    const std::size_t h = std::min({history.levels() - 1, ic, g.nx - 1 - ic});
    std::vector<double> cone;
    if (h >= 1) cone = cone_charge_series(history, make_cone(g, ic, h));

    for (std::size_t k = 0; k < history.levels(); ++k) {
        const double cc =
            k < cone.size() ? cone[k] : std::numeric_limits<double>::quiet_NaN();
        out << k << ',' << format_double(g.time(k)) << ','
            << format_double(report.charge_series[k]) << ',' << format_double(cc) << ','
            << format_double(level_lorentz(history, k)) << ','
            << format_double(level_local_conservation(history, k)) << '\n';
    }
}

void write_report_txt(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& entries,
                      const std::string& provenance) {
    auto out = open_out(path);
    out << "# " << provenance << "\n";
    for (const auto& [key, value] : entries) out << key << " = " << value << "\n";
}

void write_convergence_csv(const std::string& path, const ConvergenceTable& table,
                           const std::string& param_name, const std::string& provenance) {
    auto out = open_out(path);
    out << "# " << provenance << "\n";
    out << param_name << ",distance_uv,distance_gauge,observed_order\n";
    for (const auto& row : table.rows) {
        out << format_double(row.param) << ',' << format_double(row.distance_uv) << ','
            << format_double(row.distance_gauge) << ',' << format_double(row.observed_order)
            << '\n';
    }
}

void write_stability_csv(const std::string& path, const StabilityTrace& trace,
                         const std::string& provenance) {
    auto out = open_out(path);
    out << "# " << provenance << " fitted_rate=" << format_double(trace.fitted_rate)
        << " envelope_offset=" << format_double(trace.envelope_offset)
        << " envelope_margin=" << format_double(trace.envelope_margin)
        << " g_T=" << format_double(trace.g_T) << "\n";
    out << "level,t,separation\n";
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
        out << k << ',' << format_double(trace.times[k]) << ','
            << format_double(trace.separation[k]) << '\n';
    }
}

}  // namespace mdlc
