#include <benchmark/benchmark.h>

#include "omsim/config.hpp"
#include "omsim/entanglement.hpp"
#include "omsim/sweep.hpp"

namespace {

using namespace omsim;

void BM_DeriveRates(benchmark::State& state) {
    const PhysicalParams p = default_params();
    for (auto _ : state) {
        benchmark::DoNotOptimize(derive_rates(p));
    }
}
BENCHMARK(BM_DeriveRates);

void BM_SteadyState(benchmark::State& state) {
    const PhysicalParams p = default_params();
    const DerivedRates r = derive_rates(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_steady_state(r, p.detuning_s));
    }
}
BENCHMARK(BM_SteadyState);

void BM_RouthHurwitz(benchmark::State& state) {
    const PhysicalParams p = default_params();
    const DerivedRates r = derive_rates(p);
    const SteadyState ss = solve_steady_state(r, p.detuning_s);
    const DriftMatrix drift = build_drift(r, ss);
    for (auto _ : state) {
        benchmark::DoNotOptimize(routh_hurwitz(drift));
    }
}
BENCHMARK(BM_RouthHurwitz);

void BM_SolveLyapunov(benchmark::State& state) {
    const PhysicalParams p = default_params();
    const DerivedRates r = derive_rates(p);
    const SteadyState ss = solve_steady_state(r, p.detuning_s);
    const DriftMatrix drift = build_drift(r, ss);
    const DiffusionMatrix diffusion = build_diffusion(r, ss);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_lyapunov(drift, diffusion));
    }
}
BENCHMARK(BM_SolveLyapunov);

void BM_PointPipeline(benchmark::State& state) {
    const PhysicalParams p = default_params();
    for (auto _ : state) {
        benchmark::DoNotOptimize(entanglement_at(p));
    }
}
BENCHMARK(BM_PointPipeline);

void BM_Sweep1D(benchmark::State& state) {
    SweepSpec spec;
    spec.base = default_params();
    spec.axes = {{AxisField::delta_s, 1.0, 2.6, static_cast<int>(state.range(0)),
                  Spacing::linear}};
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_sweep(spec, workers));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sweep1D)->Args({64, 1})->Args({64, 4})->Args({256, 1})->Args({256, 4});

}  // namespace

BENCHMARK_MAIN();
