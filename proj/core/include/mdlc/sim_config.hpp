#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdlc/grid.hpp"
#include "mdlc/initial_data.hpp"

namespace mdlc {

/// Run/study configuration, parsed from a flat `key = value` file
/// (lists are comma-separated, `#` starts a comment line).
struct SimConfig {
    // data
    Preset preset = Preset::Zero;
    PresetParams params;
    std::string csv_path;  // used when preset = csv

    // lattice
    double xmin = -1.0;
    double xmax = 1.0;
    double dx = 0.25;
    double T = 0.0;
    Boundary boundary = Boundary::ZeroInflow;
    double m = 0.0;

    // outputs
    std::string out_dir = "out";
    std::size_t snapshot_stride = 0;  // 0: first and last level only

    // studies
    std::vector<double> dx_list;
    std::vector<int> n_list;
    std::vector<double> delta_list;
    Preset perturb_preset = Preset::Zero;
    PresetParams perturb_params;
    int workers = 1;

    // verification tolerances
    double tol_charge_drift = 1e-12;
    double tol_cone = 1e-12;
    double tol_pointwise_m0 = 1e-12;
    double tol_margin_scale = 1.0;   // generic margin tolerance, units of dx
    double tol_gauge_sup = 1e-10;
    double tol_lorentz = -1.0;       // < 0: report only, do not enforce
    double tol_local_conservation = -1.0;
    double order_threshold = 1.9;
    double delta_scaling_rtol = 0.1;
    double envelope_tol = 1e-10;

    // fault-injection hook
    double fault_rotation_scale = 1.0;

    bool load_from_csv = false;
    std::uint64_t config_hash = 0;

    GridSpec make_grid_spec() const;
    InitialData make_data(const GridSpec& grid) const;
    std::string provenance() const;  // comment stamp for emitted files
};

SimConfig parse_config_text(const std::string& text);
SimConfig parse_config_file(const std::string& path);

}  // namespace mdlc
