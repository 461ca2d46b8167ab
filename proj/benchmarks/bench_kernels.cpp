#include <benchmark/benchmark.h>

#include <vector>

#include "sscl/flux.hpp"
#include "sscl/fv.hpp"
#include "sscl/initial_data.hpp"
#include "sscl/kinetic.hpp"
#include "sscl/sobolev.hpp"

namespace {

using namespace sscl;

Field sine(std::size_t n, std::size_t dim) {
    const double p[] = {1.0, 1.0};
    return make_initial("sine", p, dim, n);
}

void BM_Sweep1D(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Field u0 = sine(n, 1);
    const ScalarFlux A = burgers(1).component(0);
    for (auto _ : state) {
        Field u = u0;
        sweep_1d(u, 0, A, 0.01);
        benchmark::DoNotOptimize(u.data().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Sweep1D)->RangeMultiplier(4)->Range(256, 16384);

void BM_StrangSplit2D(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Field u0 = sine(n, 2);
    const FluxSpec flux = diagonal_power(1);
    const double dbeta[] = {0.01, -0.007};
    for (auto _ : state) {
        Field u = u0;
        strang_split_2d(u, flux, dbeta);
        benchmark::DoNotOptimize(u.data().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_StrangSplit2D)->RangeMultiplier(2)->Range(32, 256);

void BM_WLambdaNorm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const double p[] = {8.0, 3.0};
    const Field u = make_initial("random_fourier", p, 1, n);
    for (auto _ : state) benchmark::DoNotOptimize(w_lambda_1_norm(u, 0.5));
}
BENCHMARK(BM_WLambdaNorm)->RangeMultiplier(4)->Range(256, 16384);

void BM_KruzkovDecrease(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto bins = static_cast<std::size_t>(state.range(1));
    const Field before = sine(n, 1);
    Field after = before;
    sweep_1d(after, 0, burgers(1).component(0), 0.05);
    std::vector<double> c(bins), out(bins);
    for (std::size_t b = 0; b < bins; ++b) c[b] = -1.1 + 2.2 * (b + 0.5) / static_cast<double>(bins);
    for (auto _ : state) {
        kruzkov_decrease(before, after, c, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_KruzkovDecrease)->Args({1024, 128})->Args({4096, 128})->Args({4096, 512});

}  // namespace
BENCHMARK_MAIN();
