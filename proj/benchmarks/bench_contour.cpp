// Contour work: winding counts and the Gamma-smoothed line integral.

#include "beurling/number_system.hpp"
#include "beurling/zeros.hpp"
#include "beurling/zeta_eval.hpp"

#include <benchmark/benchmark.h>

using namespace beurling;

static void BM_winding_reference(benchmark::State& state) {
    const Evaluator ez = reference_zeta_evaluator();
    const Rectangle rect{0.4, 0.9, 5.0, double(state.range(0))};
    for (auto _ : state) {
        auto w = winding_count(ez, rect, 0.0);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_winding_reference)->Arg(30)->Arg(100);

static void BM_winding_continuation(benchmark::State& state) {
    const auto sys = rational_system(double(state.range(0)));
    const auto cfg = make_continuation_config(sys, 0.0);
    const Evaluator ez = continuation_evaluator(sys, cfg);
    const Rectangle rect{0.4, 0.9, 5.0, 16.0};
    for (auto _ : state) {
        auto w = winding_count(ez, rect, 0.0);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_winding_continuation)->Range(1 << 12, 1 << 16);

static void BM_line_integral(benchmark::State& state) {
    const auto sys = rational_system(2e4);
    const auto cfg = make_continuation_config(sys, 0.0);
    const auto muX = sys.mu_measure().restricted(20.0);
    const Evaluator ez = continuation_evaluator(sys, cfg);
    for (auto _ : state) {
        auto li = smoothing_line_integral(ez, muX, 0.0, 0.75, 5.0, 50.0, 1e-6);
        benchmark::DoNotOptimize(li.value);
    }
}
BENCHMARK(BM_line_integral);
