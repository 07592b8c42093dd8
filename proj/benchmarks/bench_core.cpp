#include "friable/optimizer.hpp"
#include "friable/sieve.hpp"
#include "friable/sums.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace friable;

namespace {

void BM_FactorSieve(benchmark::State& state) {
    const auto hi = static_cast<u64>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_sieve(1, hi));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_FactorSieve)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

void BM_Psi(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(psi(x, std::pow(x, 0.3)));
}
BENCHMARK(BM_Psi)->RangeMultiplier(10)->Range(100'000, 10'000'000)->Unit(benchmark::kMillisecond);

void BM_SumLinear(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    const SumParams p(x, 1000, 1'000'003, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(sum_linear(p));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SumLinear)->RangeMultiplier(10)->Range(100'000, 10'000'000)->Unit(benchmark::kMillisecond);

void BM_MomentCount(benchmark::State& state) {
    const auto M = static_cast<u64>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(moment_count(2, 3, 10007, M));
}
BENCHMARK(BM_MomentCount)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

void BM_OptimalOmega(benchmark::State& state) {
    double alpha = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimal_omega(alpha, 0.5));
        alpha = alpha > 0.98 ? 0.01 : alpha + 0.01;
    }
}
BENCHMARK(BM_OptimalOmega);

} // namespace

BENCHMARK_MAIN();
