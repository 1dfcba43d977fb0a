#include <benchmark/benchmark.h>

#include "cavdress/continuum.hpp"
#include "cavdress/coupling.hpp"
#include "cavdress/evolution.hpp"
#include "cavdress/small_cavity.hpp"
#include "cavdress/spectrum.hpp"

using namespace cavdress;

static void spectrum_solve(benchmark::State& state) {
    const auto K = static_cast<std::size_t>(state.range(0));
    const auto c = CavityConfig::from_delta(1.0, 0.5, 1.0, K);
    for (auto _ : state) benchmark::DoNotOptimize(solve_spectrum(c));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(spectrum_solve)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

static void mode_sum(benchmark::State& state) {
    const auto K = static_cast<std::size_t>(state.range(0));
    const auto c = CavityConfig::from_delta(1.0, 0.5, 1.0, K);
    const auto s = solve_spectrum(c);
    const auto t = build_couplings(c, s, {.keep_eta_term = true, .column_defects = false});
    double time = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f00_mode_sum(time, t, s));
        time += 0.01;
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(mode_sum)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

static void g_integral(benchmark::State& state) {
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(G_integral(t, 1.0, 0.5));
}
BENCHMARK(g_integral)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

static void small_cavity_double_sum(benchmark::State& state) {
    SmallCavityModelOptions opt;
    opt.truncation = static_cast<std::size_t>(state.range(0));
    const auto m = make_small_cavity_model(1.0, 0.5, 0.1, opt);
    for (auto _ : state) benchmark::DoNotOptimize(rho11_small(3.0, m, 0.5));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(small_cavity_double_sum)->RangeMultiplier(2)->Range(125, 1000)->Complexity(benchmark::oNSquared);

static void small_cavity_amplitude(benchmark::State& state) {
    const auto m = make_small_cavity_model(1.0, 0.5, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(f00_small(3.0, m));
}
BENCHMARK(small_cavity_amplitude);
BENCHMARK_MAIN();
