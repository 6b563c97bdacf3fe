#include <benchmark/benchmark.h>

#include "qshift/oracle.hpp"
#include "qshift/potential.hpp"

namespace {

qshift::TridiagonalOperator rosen_morse_operator(int n_points) {
    const qshift::PotentialSpec spec = qshift::RosenMorseQ{1, 10, 1, 1};
    return qshift::discretize([&](double x) { return qshift::eval_potential(spec, x); },
                              qshift::Grid(-30, 30, n_points));
}

void BM_SturmCount(benchmark::State& state) {
    const auto op = rosen_morse_operator(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qshift::sturm_count(op, -2.0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SturmCount)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

void BM_EigenvaluesBelow(benchmark::State& state) {
    const auto op = rosen_morse_operator(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qshift::eigenvalues_below(op, -1.0));
}
BENCHMARK(BM_EigenvaluesBelow)->Arg(6001)->Arg(24001)->Unit(benchmark::kMillisecond);

void BM_EigenBelow(benchmark::State& state) {
    const auto op = rosen_morse_operator(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(qshift::eigen_below(op, -1.0));
}
BENCHMARK(BM_EigenBelow)->Arg(6001)->Arg(24001)->Unit(benchmark::kMillisecond);

void BM_SolveBoundStates(benchmark::State& state) {
    qshift::SolverConfig config;
    config.refine = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qshift::solve_bound_states(qshift::RosenMorseQ{1, 10, 1, 4}, config));
    }
}
BENCHMARK(BM_SolveBoundStates)->Arg(0)->Arg(1)->ArgName("refine")->Unit(benchmark::kMillisecond);

} // namespace
