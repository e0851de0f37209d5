#include <benchmark/benchmark.h>

#include "salbound/bounds.hpp"
#include "salbound/delta_verify.hpp"
#include "salbound/solver.hpp"

namespace {

using namespace salbound;

void BM_KineticMatrix(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kinetic_matrix(1.0, 1.0, 0.5, m, 1.0, 200));
}
BENCHMARK(BM_KineticMatrix)->Arg(10)->Arg(20)->Arg(40)->Arg(80);

void BM_GroundEnergy(benchmark::State& state) {
    SolverConfig cfg;
    cfg.basis_size = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ground_energy(ReducedHamiltonian{}, cfg));
}
BENCHMARK(BM_GroundEnergy)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_ComputeBounds(benchmark::State& state) {
    const ProblemSpec spec{static_cast<int>(state.range(0)), 0.0, PairPotential::linear(1.0)};
    for (auto _ : state) benchmark::DoNotOptimize(compute_bounds(spec));
}
BENCHMARK(BM_ComputeBounds)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_DeltaValue(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto configs = sample_momenta(SymmetrizedGaussianState::isotropic(n), 1024, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_value(1.0, n, configs[i++ & 1023]));
    }
}
BENCHMARK(BM_DeltaValue)->Arg(3)->Arg(4)->Arg(10);

void BM_ExpectationDelta(benchmark::State& state) {
    const auto st = SymmetrizedGaussianState::isotropic(3);
    SamplingOptions opts;
    opts.threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(expectation_delta(st, 0.0, 3, 100000, 42, opts));
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_ExpectationDelta)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
