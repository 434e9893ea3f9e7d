#include <benchmark/benchmark.h>

#include "mdlc/diagnostics.hpp"
#include "mdlc/dirac_step.hpp"
#include "mdlc/experiments.hpp"
#include "mdlc/wave_step.hpp"

namespace {

using namespace mdlc;

GridSpec bench_grid(std::size_t cells, std::size_t steps) {
    GridSpec g = make_grid(-2.0, 2.0, 4.0 / static_cast<double>(cells),
                           static_cast<double>(steps) * 4.0 / static_cast<double>(cells),
                           Boundary::Periodic);
    return g;
}

PresetParams packet_params() {
    PresetParams p;
    p.amp_u = 1.0;
    p.amp_v = 0.5;
    p.width = 0.2;
    p.momentum = 3.0;
    p.gauge_amp = 0.4;
    return p;
}

void BM_StepSpinor(benchmark::State& state) {
    const GridSpec grid = bench_grid(static_cast<std::size_t>(state.range(0)), 1);
    const InitialData data = make_preset(Preset::GaussianPacket, packet_params(), grid);
    SpinorField spinor{data.u0, data.v0, 0};
    const GaugeField gauge = initial_gauge(data, grid);
    const SpinorStepConfig cfg{1.0, 1.0};
    for (auto _ : state) {
        SpinorField next = step_spinor(spinor, gauge, grid, cfg);
        benchmark::DoNotOptimize(next.u.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepSpinor)->Arg(1 << 10)->Arg(1 << 13)->Arg(1 << 16);

void BM_LeapfrogWave(benchmark::State& state) {
    const GridSpec grid = bench_grid(static_cast<std::size_t>(state.range(0)), 1);
    std::vector<double> prev(grid.nx, 0.0), curr(grid.nx, 0.0), src(grid.nx, 1.0);
    for (std::size_t i = 0; i < grid.nx; ++i) curr[i] = std::sin(grid.x(i));
    for (auto _ : state) {
        std::vector<double> next = leapfrog_wave(prev, curr, src, grid);
        benchmark::DoNotOptimize(next.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LeapfrogWave)->Arg(1 << 10)->Arg(1 << 13)->Arg(1 << 16);

void BM_RunSimulation(benchmark::State& state) {
    const auto cells = static_cast<std::size_t>(state.range(0));
    const GridSpec grid = bench_grid(cells, cells / 4);
    const InitialData data = make_preset(Preset::GaussianPacket, packet_params(), grid);
    for (auto _ : state) {
        RunHistory h = run_simulation(data, grid, 1.0);
        benchmark::DoNotOptimize(h.spinors.back().u.data());
    }
}
BENCHMARK(BM_RunSimulation)->Arg(1 << 9)->Arg(1 << 11);

void BM_PointwiseBoundReport(benchmark::State& state) {
    const auto cells = static_cast<std::size_t>(state.range(0));
    const GridSpec grid = bench_grid(cells, cells / 4);
    const InitialData data = make_preset(Preset::GaussianPacket, packet_params(), grid);
    const RunHistory h = run_simulation(data, grid, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pointwise_bound_report(h));
    }
}
BENCHMARK(BM_PointwiseBoundReport)->Arg(1 << 9)->Arg(1 << 11);

}  // namespace

BENCHMARK_MAIN();
