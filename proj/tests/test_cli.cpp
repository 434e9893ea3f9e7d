#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mdlc/commands.hpp"
#include "mdlc/experiments.hpp"

using namespace mdlc;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("mdlc_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& body) {
    const fs::path path = dir / name;
    std::ofstream out(path);
    out << body;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kGaussianRun = R"(
preset = gaussian_packet
m = 1.0
xmin = -2
xmax = 2
dx = 0.015625
T = 0.5
boundary = zero_inflow
amp_u = 1.0
amp_v = 0.5
width = 0.15
momentum = 2.0
gauge_amp = 0.4
snapshot_stride = 16
)";

}  // namespace

TEST_CASE("config parsing") {
    const SimConfig cfg = parse_config_text(
        "preset = box\nm = 0.5\nxmin=-1\nxmax = 1\ndx = 0.125\nT = 0.25\n"
        "boundary = periodic\n# comment\n\ndx_list = 0.25, 0.125,0.0625\n"
        "n_list = 4, 8\ndelta_list = 0.01, 0.001\nworkers = 2\n"
        "perturb_preset = gaussian_packet\nperturb_width = 0.3\n");
    CHECK(cfg.preset == Preset::Box);
    CHECK(cfg.m == 0.5);
    CHECK(cfg.boundary == Boundary::Periodic);
    CHECK(cfg.dx_list.size() == 3);
    CHECK(cfg.n_list.size() == 2);
    CHECK(cfg.delta_list.size() == 2);
    CHECK(cfg.workers == 2);
    CHECK(cfg.perturb_params.width == 0.3);
    CHECK(cfg.config_hash != 0);

    CHECK_THROWS_AS(parse_config_text("nonsense_key = 3\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("preset box\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("m = -1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("boundary = open\n"), std::invalid_argument);
}

TEST_CASE("simulate: zero preset writes a clean report") {
    const fs::path dir = scratch_dir("simulate_zero");
    const fs::path cfg = write_config(dir, "run.cfg",
                                      "preset = zero\nxmin = -1\nxmax = 1\ndx = 0.125\n"
                                      "T = 0.5\nm = 1.0\n");
    const int rc = run_cli({"simulate", "--config", cfg.string(), "--out",
                            (dir / "out").string()});
    CHECK(rc == kExitPass);
    CHECK(fs::exists(dir / "out" / "snapshot_000000.csv"));
    CHECK(fs::exists(dir / "out" / "snapshot_000004.csv"));
    CHECK(fs::exists(dir / "out" / "series.csv"));
    const std::string report = slurp(dir / "out" / "report.txt");
    CHECK(report.find("max_charge_drift = 0") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("simulate: identical configs give bit-identical outputs") {
    const fs::path dir = scratch_dir("simulate_deterministic");
    const fs::path cfg = write_config(dir, "run.cfg", kGaussianRun);
    CHECK(run_cli({"simulate", "--config", cfg.string(), "--out", (dir / "a").string()}) ==
          kExitPass);
    CHECK(run_cli({"simulate", "--config", cfg.string(), "--out", (dir / "b").string()}) ==
          kExitPass);
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        const fs::path other = dir / "b" / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
    }
    fs::remove_all(dir);
}

TEST_CASE("cli validation failures exit with code 2") {
    CHECK(run_cli({"simulate", "--config", "/nonexistent/mdlc.cfg"}) == kExitValidation);
    const fs::path dir = scratch_dir("validation");
    const fs::path bad = write_config(dir, "bad.cfg", "dx = -1\n");
    CHECK(run_cli({"simulate", "--config", bad.string()}) == kExitValidation);
    // Window-adequacy violation is a validation error too.
    const fs::path tight = write_config(dir, "tight.cfg",
                                        "preset = box\namp_u = 1\nwidth = 0.5\n"
                                        "xmin = -1\nxmax = 1\ndx = 0.03125\nT = 1.0\n");
    CHECK(run_cli({"simulate", "--config", tight.string(), "--out",
                   (dir / "out").string()}) == kExitValidation);
    fs::remove_all(dir);
}

TEST_CASE("verify: clean runs pass, fault injection trips the suite") {
    const fs::path dir = scratch_dir("verify");

    const fs::path zero = write_config(dir, "zero.cfg",
                                       "preset = zero\nxmin = -1\nxmax = 1\ndx = 0.125\n"
                                       "T = 0.5\nm = 0.0\n");
    CHECK(run_cli({"verify", "--config", zero.string(), "--out", (dir / "z").string()}) ==
          kExitPass);

    // Massless packet with nonzero gauge data: the pointwise bound is exact.
    const fs::path m0 = write_config(dir, "m0.cfg",
                                     "preset = gaussian_packet\nm = 0.0\nxmin = -2\nxmax = 2\n"
                                     "dx = 0.015625\nT = 0.5\namp_u = 1.0\namp_v = 0.5\n"
                                     "width = 0.15\nmomentum = 2.0\ngauge_amp = 0.6\n"
                                     "gauge_vel_amp = 0.4\n");
    CHECK(run_cli({"verify", "--config", m0.string(), "--out", (dir / "m0").string()}) ==
          kExitPass);
    const std::string table = slurp(dir / "m0" / "verify.txt");
    CHECK(table.find("pointwise_bound") != std::string::npos);
    CHECK(table.find("FAIL") == std::string::npos);

    // A 1e-3 non-unitarity in the mass rotation must trip the charge check.
    const fs::path fault = write_config(dir, "fault.cfg", std::string(kGaussianRun) +
                                                              "fault_rotation_scale = 1.001\n");
    CHECK(run_cli({"verify", "--config", fault.string(), "--out", (dir / "f").string()}) ==
          kExitCheckFailed);
    CHECK(slurp(dir / "f" / "verify.txt").find("FAIL") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("simulate accepts CSV initial data") {
    const fs::path dir = scratch_dir("csv_data");
    // Build a data file through the library, then feed it back via config.
    const GridSpec g = make_grid(-2.0, 2.0, 0.03125, 0.5, Boundary::ZeroInflow);
    PresetParams p;
    p.amp_u = 1.0;
    p.amp_v = 0.5;
    p.width = 0.15;
    p.momentum = 2.0;
    const InitialData d = make_preset(Preset::GaussianPacket, p, g);
    save_initial_data_csv((dir / "data.csv").string(), d, g);

    const fs::path cfg = write_config(dir, "run.cfg",
                                      "preset = csv\ncsv_path = " + (dir / "data.csv").string() +
                                          "\nm = 1.0\nxmin = -2\nxmax = 2\ndx = 0.03125\n"
                                          "T = 0.5\n");
    CHECK(run_cli({"simulate", "--config", cfg.string(), "--out", (dir / "out").string()}) ==
          kExitPass);
    CHECK(fs::exists(dir / "out" / "report.txt"));
    fs::remove_all(dir);
}

TEST_CASE("converge subcommand") {
    const fs::path dir = scratch_dir("converge");
    const fs::path good = write_config(
        dir, "good.cfg",
        "preset = gaussian_packet\nm = 1.0\nxmin = -3\nxmax = 3\nT = 1.0\n"
        "amp_u = 1.0\namp_v = 0.5\nwidth = 0.25\nmomentum = 2.0\ngauge_amp = 0.5\n"
        "dx_list = 0.03125, 0.015625, 0.0078125\n");
    CHECK(run_cli({"converge", "--config", good.string(), "--out", (dir / "g").string()}) ==
          kExitPass);
    CHECK(fs::exists(dir / "g" / "convergence.csv"));

    const fs::path broken = write_config(dir, "broken.cfg",
                                         "preset = zero\ndx_list = 0.25, 0.2, 0.1\n");
    CHECK(run_cli({"converge", "--config", broken.string(), "--out",
                   (dir / "b").string()}) == kExitValidation);

    // n_list adds the smoothing chain to the study outputs.
    const fs::path with_moll = write_config(
        dir, "moll.cfg",
        "preset = box\nm = 1.0\nxmin = -2\nxmax = 2\ndx = 0.00390625\nT = 0.25\n"
        "amp_u = 1.0\namp_v = 0.5\nwidth = 1.0\n"
        "dx_list = 0.015625, 0.0078125, 0.00390625\norder_threshold = 0.3\n"
        "n_list = 4, 8, 16\nworkers = 2\n");
    CHECK(run_cli({"converge", "--config", with_moll.string(), "--out",
                   (dir / "m").string()}) == kExitPass);
    CHECK(fs::exists(dir / "m" / "mollification.csv"));
    fs::remove_all(dir);
}

TEST_CASE("stability subcommand") {
    const fs::path dir = scratch_dir("stability");
    const fs::path cfg = write_config(
        dir, "stab.cfg",
        "preset = gaussian_packet\nm = 1.0\nxmin = -3\nxmax = 3\ndx = 0.015625\nT = 1.0\n"
        "amp_u = 1.0\namp_v = 0.6\nwidth = 0.25\ngauge_amp = 0.4\n"
        "perturb_preset = gaussian_packet\nperturb_amp_u = 1.0\nperturb_amp_v = 0.8\n"
        "perturb_width = 0.2\ndelta_list = 0.0, 0.01, 0.001\n");
    CHECK(run_cli({"stability", "--config", cfg.string(), "--out", (dir / "s").string()}) ==
          kExitPass);
    CHECK(fs::exists(dir / "s" / "stability_00.csv"));
    CHECK(fs::exists(dir / "s" / "stability.txt"));

    const fs::path empty = write_config(dir, "empty.cfg", "preset = zero\n");
    CHECK(run_cli({"stability", "--config", empty.string(), "--out",
                   (dir / "e").string()}) == kExitValidation);
    fs::remove_all(dir);
}
