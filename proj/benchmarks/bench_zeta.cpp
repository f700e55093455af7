// Continuation evaluation: one complex exponential per table atom, plus the
// closed-form tail pieces.  This is the kernel under every contour walk and
// quadrature node.

#include "beurling/number_system.hpp"
#include "beurling/reference_zeta.hpp"
#include "beurling/zeta_eval.hpp"

#include <benchmark/benchmark.h>

using namespace beurling;

static void BM_zeta_continued(benchmark::State& state) {
    const double x_max = double(state.range(0));
    const auto sys = rational_system(x_max);
    const auto cfg = make_continuation_config(sys, 0.0);
    const cplx s(0.5, 14.0);
    for (auto _ : state) {
        auto r = zeta_continued(sys, s, cfg);
        benchmark::DoNotOptimize(r.value);
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(x_max));
}
BENCHMARK(BM_zeta_continued)->Range(1 << 12, 1 << 20);

static void BM_zeta_derivative(benchmark::State& state) {
    const auto sys = rational_system(1e5);
    const auto cfg = make_continuation_config(sys, 0.0);
    const cplx s(0.5, 14.0);
    for (auto _ : state) {
        auto r = zeta_derivative(sys, s, cfg);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_zeta_derivative);

static void BM_reference_zeta(benchmark::State& state) {
    const cplx s(0.5, double(state.range(0)));
    for (auto _ : state) {
        auto r = riemann_zeta_em(s);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_reference_zeta)->Arg(14)->Arg(100)->Arg(400);

static void BM_mellin(benchmark::State& state) {
    const auto ext = rescaled_system(0.5, 1e8);
    const cplx s(0.75, 20.0);
    for (auto _ : state) {
        auto v = ext.dN.mellin(s);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_mellin);
