// Convolution and inverse kernels: the dominant cost of the construction
// pipeline and of the mollified-coefficient assembly.

#include "beurling/number_system.hpp"
#include "beurling/point_measure.hpp"
#include "beurling/zeta_eval.hpp"

#include <benchmark/benchmark.h>

using namespace beurling;

static void BM_convolve_count_mu(benchmark::State& state) {
    const double x_max = double(state.range(0));
    const auto sys = rational_system(x_max);
    const auto mu20 = sys.mu_measure().restricted(20.0);
    for (auto _ : state) {
        auto am = convolve(sys.count_measure(), mu20, x_max);
        benchmark::DoNotOptimize(am.size());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_convolve_count_mu)->Range(1 << 12, 1 << 18)->Complexity();

static void BM_self_convolution(benchmark::State& state) {
    const double x_max = double(state.range(0));
    const auto sys = rational_system(x_max);
    for (auto _ : state) {
        auto d = divisor_measure(sys);
        benchmark::DoNotOptimize(d.size());
    }
}
BENCHMARK(BM_self_convolution)->Range(1 << 10, 1 << 14);

static void BM_conv_inverse(benchmark::State& state) {
    const double x_max = double(state.range(0));
    const auto sys = rational_system(x_max);
    for (auto _ : state) {
        auto inv = conv_inverse(sys.count_measure(), x_max);
        benchmark::DoNotOptimize(inv.size());
    }
}
BENCHMARK(BM_conv_inverse)->Range(1 << 8, 1 << 12);

static void BM_exp_star(benchmark::State& state) {
    const double x_max = 1e5;
    const auto ext = rescaled_system(0.6, x_max);
    for (auto _ : state) {
        auto n = exp_star(ext.dPi, x_max);
        benchmark::DoNotOptimize(n.size());
    }
}
BENCHMARK(BM_exp_star);

BENCHMARK_MAIN();
