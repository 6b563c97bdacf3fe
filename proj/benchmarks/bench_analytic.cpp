#include <benchmark/benchmark.h>

#include "qshift/analytic.hpp"
#include "qshift/deformed_hyperbolic.hpp"

namespace {

void BM_DeformedCosh(benchmark::State& state) {
    double u = -20.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qshift::cosh_q(u, 3.0));
        u = u > 20.0 ? -20.0 : u + 0.001;
    }
}
BENCHMARK(BM_DeformedCosh);

void BM_Hypergeometric(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    // z = 0.2 stays well conditioned; z = 0.9 cancels and takes the wide path
    const double z = state.range(1) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(qshift::hypergeometric_polynomial(n, 5.25, 2.2, z));
}
BENCHMARK(BM_Hypergeometric)->Args({2, 2})->Args({10, 2})->Args({10, 9});

void BM_BuildWavefunction(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(qshift::build_wavefunction(1, 1.0, 6.0, 1.0));
}
BENCHMARK(BM_BuildWavefunction)->Unit(benchmark::kMillisecond);

} // namespace
