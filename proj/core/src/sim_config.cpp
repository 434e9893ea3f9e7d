#include "mdlc/sim_config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mdlc/io.hpp"

namespace mdlc {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> items;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': bad number '" + value + "'");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config key '" + key + "': bad boolean '" + value + "'");
}

Boundary to_boundary(const std::string& value) {
    if (value == "zero_inflow" || value == "zero-inflow") return Boundary::ZeroInflow;
    if (value == "periodic") return Boundary::Periodic;
    throw std::invalid_argument("boundary must be zero_inflow or periodic, got '" + value + "'");
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
    SimConfig cfg;
    cfg.config_hash = fnv1a64(text);

    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "preset") {
            if (value == "csv") {
                cfg.load_from_csv = true;
            } else {
                cfg.preset = preset_from_name(value);
            }
        } else if (key == "csv_path") cfg.csv_path = value;
        else if (key == "m") cfg.m = to_double(key, value);
        else if (key == "xmin") cfg.xmin = to_double(key, value);
        else if (key == "xmax") cfg.xmax = to_double(key, value);
        else if (key == "dx") cfg.dx = to_double(key, value);
        else if (key == "T") cfg.T = to_double(key, value);
        else if (key == "boundary") cfg.boundary = to_boundary(value);
        else if (key == "out") cfg.out_dir = value;
        else if (key == "snapshot_stride") cfg.snapshot_stride =
            static_cast<std::size_t>(to_double(key, value));
        else if (key == "amp_u") cfg.params.amp_u = to_double(key, value);
        else if (key == "amp_v") cfg.params.amp_v = to_double(key, value);
        else if (key == "center") cfg.params.center = to_double(key, value);
        else if (key == "width") cfg.params.width = to_double(key, value);
        else if (key == "momentum") cfg.params.momentum = to_double(key, value);
        else if (key == "gauge_amp") cfg.params.gauge_amp = to_double(key, value);
        else if (key == "gauge_vel_amp") cfg.params.gauge_vel_amp = to_double(key, value);
        else if (key == "constraint_satisfying") cfg.params.constraint_satisfying =
            to_bool(key, value);
        else if (key == "dx_list") {
            cfg.dx_list.clear();
            for (const auto& item : split_list(value)) cfg.dx_list.push_back(to_double(key, item));
        } else if (key == "n_list") {
            cfg.n_list.clear();
            for (const auto& item : split_list(value)) {
                cfg.n_list.push_back(static_cast<int>(to_double(key, item)));
            }
        } else if (key == "delta_list") {
            cfg.delta_list.clear();
            for (const auto& item : split_list(value)) {
                cfg.delta_list.push_back(to_double(key, item));
            }
        } else if (key == "perturb_preset") cfg.perturb_preset = preset_from_name(value);
        else if (key == "perturb_amp_u") cfg.perturb_params.amp_u = to_double(key, value);
        else if (key == "perturb_amp_v") cfg.perturb_params.amp_v = to_double(key, value);
        else if (key == "perturb_center") cfg.perturb_params.center = to_double(key, value);
        else if (key == "perturb_width") cfg.perturb_params.width = to_double(key, value);
        else if (key == "perturb_momentum") cfg.perturb_params.momentum = to_double(key, value);
        else if (key == "perturb_gauge_amp") cfg.perturb_params.gauge_amp = to_double(key, value);
        else if (key == "perturb_gauge_vel_amp") cfg.perturb_params.gauge_vel_amp =
            to_double(key, value);
        else if (key == "workers") cfg.workers = static_cast<int>(to_double(key, value));
        else if (key == "tol_charge_drift") cfg.tol_charge_drift = to_double(key, value);
        else if (key == "tol_cone") cfg.tol_cone = to_double(key, value);
        else if (key == "tol_pointwise_m0") cfg.tol_pointwise_m0 = to_double(key, value);
        else if (key == "tol_margin_scale") cfg.tol_margin_scale = to_double(key, value);
        else if (key == "tol_gauge_sup") cfg.tol_gauge_sup = to_double(key, value);
        else if (key == "tol_lorentz") cfg.tol_lorentz = to_double(key, value);
        else if (key == "tol_local_conservation") cfg.tol_local_conservation =
            to_double(key, value);
        else if (key == "order_threshold") cfg.order_threshold = to_double(key, value);
        else if (key == "delta_scaling_rtol") cfg.delta_scaling_rtol = to_double(key, value);
        else if (key == "envelope_tol") cfg.envelope_tol = to_double(key, value);
        else if (key == "fault_rotation_scale") cfg.fault_rotation_scale = to_double(key, value);
        else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }

    if (cfg.m < 0.0) throw std::invalid_argument("config: m must be nonnegative");
    if (!(cfg.dx > 0.0)) throw std::invalid_argument("config: dx must be positive");
    if (cfg.T < 0.0) throw std::invalid_argument("config: T must be nonnegative");
    if (cfg.workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    return cfg;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

GridSpec SimConfig::make_grid_spec() const { return make_grid(xmin, xmax, dx, T, boundary); }

InitialData SimConfig::make_data(const GridSpec& grid) const {
    if (load_from_csv) {
        if (csv_path.empty()) throw std::invalid_argument("config: preset=csv needs csv_path");
        return load_initial_data_csv(csv_path, grid);
    }
    return make_preset(preset, params, grid);
}

std::string SimConfig::provenance() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "config_hash=%016llx",
                  static_cast<unsigned long long>(config_hash));
    std::string s = buf;
    s += " tol_charge_drift=" + format_double(tol_charge_drift);
    s += " tol_margin_scale=" + format_double(tol_margin_scale);
    s += " order_threshold=" + format_double(order_threshold);
    return s;
}

}  // namespace mdlc
