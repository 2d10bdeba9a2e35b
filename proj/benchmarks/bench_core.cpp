#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "waverom/waverom.hpp"

namespace {

using namespace waverom;

SnapshotMatrix hat_basis(const SpatialGrid& grid, double tau, int n) {
    return background_snapshots({PulseKind::Hat, tau},
                                TimeSampling::for_family(PulseKind::Hat, tau, n), grid);
}

void BM_LeapfrogSolve(benchmark::State& state) {
    const int cells = static_cast<int>(state.range(0));
    SpatialGrid grid(40.0, cells);
    PulseFamily family{PulseKind::Hat, 0.5};
    TimeSampling sampling = TimeSampling::for_family(PulseKind::Hat, 0.5, 16);
    Eigen::VectorXd g = evaluate_pulse(family, grid);
    Potential q = Potential::gaussian(grid, 0.3, 14.0, 0.04);
    SolverConfig cfg = SolverConfig::paper_default(grid, sampling);
    for (auto _ : state) {
        ForwardResult fr = solve_fd(q, g, grid, cfg);
        benchmark::DoNotOptimize(fr.energy_drift);
    }
    const long steps = static_cast<long>((2 * 16 - 2) * (0.5 / (0.5 * grid.step())));
    state.SetItemsProcessed(state.iterations() * steps * grid.node_count());
}
BENCHMARK(BM_LeapfrogSolve)->Arg(1920)->Arg(7680)->Unit(benchmark::kMillisecond);

void BM_Cholesky(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SpatialGrid grid(400.0, 8000);
    GramianMatrix m = mass_from_snapshots(hat_basis(grid, 0.5, n));
    for (auto _ : state) {
        Eigen::MatrixXd l = cholesky_lower(m.entries());
        benchmark::DoNotOptimize(l);
    }
}
BENCHMARK(BM_Cholesky)->Arg(75)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);

void BM_MassFromData(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> f(2 * n - 1);
    for (int k = 0; k < 2 * n - 1; ++k) f[k] = 1.0 / (1.0 + k);
    TransferSeries series(f, 0.5);
    for (auto _ : state) {
        GramianMatrix m = mass_from_data(series, n);
        benchmark::DoNotOptimize(m.entries());
    }
}
BENCHMARK(BM_MassFromData)->Arg(75)->Arg(600)->Unit(benchmark::kMillisecond);

void BM_LiftInternal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SpatialGrid grid(400.0, 8000);
    SnapshotMatrix u0 = hat_basis(grid, 0.5, n);
    GramianMatrix m0 = mass_from_snapshots(u0);
    GramianMatrix m(m0.entries() + 0.01 * Eigen::MatrixXd::Identity(n, n),
                    GramianSource::FromData);
    cholesky(m0);
    cholesky(m);
    for (auto _ : state) {
        LiftResult lift = lift_internal(u0, m0, m);
        benchmark::DoNotOptimize(lift.transform);
    }
}
BENCHMARK(BM_LiftInternal)->Arg(75)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_CausalProjection(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SpatialGrid grid(400.0, 8000);
    SnapshotMatrix u0 = hat_basis(grid, 0.5, n);
    GramianMatrix m0 = mass_from_snapshots(u0);
    cholesky(m0);
    SnapshotMatrix u = combine(u0, Eigen::MatrixXd::Identity(n, n) * 1.1);
    for (auto _ : state) {
        ProjectionResult p = causal_projection(u, u0, m0);
        benchmark::DoNotOptimize(p.coefficients);
    }
}
BENCHMARK(BM_CausalProjection)->Arg(75)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
