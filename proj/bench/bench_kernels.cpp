// Serial reference kernels against their OpenMP counterparts.
//
//   bench_kernels --benchmark_filter=km

#include <benchmark/benchmark.h>

#include "mvop/banded.hpp"
#include "mvop/ehrenfest.hpp"
#include "mvop/km_kernel.hpp"
#include "mvop/simulate.hpp"

using namespace mvop;

namespace {

ModelSpec model(int N) { return ModelSpec::multi_ball(N, {ratio(1, 2), ratio(1, 2)}, {1, std::min(3, N)}); }

template <Exec E>
void BM_band_multiply(benchmark::State& state) {
    const auto m = build<double>(model(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        auto p = band_multiply(m, m, E);
        benchmark::DoNotOptimize(p);
    }
}

template <Exec E>
void BM_theta_of_matrix(benchmark::State& state) {
    const auto spec = ModelSpec::k_ball(static_cast<int>(state.range(0)), 6);
    const auto theta = theta_for<double>(spec);
    const auto m0 = build<double>(ModelSpec::classical(spec.N));
    for (auto _ : state) {
        auto p = theta_of_matrix(theta, m0, E);
        benchmark::DoNotOptimize(p);
    }
}

template <Exec E>
void BM_km_matrix(benchmark::State& state) {
    const auto ctx = make_km_context<double>(ModelSpec::q_deformed(static_cast<int>(state.range(0)), ratio(3, 10)), false);
    for (auto _ : state) {
        auto p = km_matrix(ctx, 10, E);
        benchmark::DoNotOptimize(p);
    }
}

template <Exec E>
void BM_final_states(benchmark::State& state) {
    const SimConfig cfg{ModelSpec::q_deformed(11, ratio(3, 10)), 0, 5, state.range(0), 7};
    const TransitionSampler sampler(build<double>(cfg.spec));
    for (auto _ : state) {
        auto out = E == Exec::parallel ? kernels::final_states_parallel(sampler, cfg, 5)
                                       : kernels::final_states_serial(sampler, cfg, 5);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_band_multiply<Exec::serial>)->Arg(200)->Arg(1000)->Arg(2000);
BENCHMARK(BM_band_multiply<Exec::parallel>)->Arg(200)->Arg(1000)->Arg(2000);
BENCHMARK(BM_theta_of_matrix<Exec::serial>)->Arg(200)->Arg(1000);
BENCHMARK(BM_theta_of_matrix<Exec::parallel>)->Arg(200)->Arg(1000);
BENCHMARK(BM_km_matrix<Exec::serial>)->Arg(21)->Arg(101)->Arg(301);
BENCHMARK(BM_km_matrix<Exec::parallel>)->Arg(21)->Arg(101)->Arg(301);
BENCHMARK(BM_final_states<Exec::serial>)->Arg(100000)->Arg(1000000);
BENCHMARK(BM_final_states<Exec::parallel>)->Arg(100000)->Arg(1000000);

BENCHMARK_MAIN();
