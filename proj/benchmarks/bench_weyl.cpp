#include <benchmark/benchmark.h>

#include "fsdim/generators.hpp"
#include "fsdim/weyl.hpp"

namespace {

void BM_WeylSeries(benchmark::State& state) {
    auto x = fsdim::gen_champernowne(2);
    const std::uint64_t n = 1 << 18;
    x.prefix(n + 64);
    std::vector<long long> ks;
    for (long long k = 1; k <= state.range(0); ++k) ks.push_back(k);
    std::vector<std::uint64_t> cps{n / 4, n / 2, n};
    for (auto _ : state) {
        auto series = fsdim::weyl_series(x, ks, cps, 64, static_cast<int>(state.range(1)));
        benchmark::DoNotOptimize(series.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n) * state.range(0));
}
BENCHMARK(BM_WeylSeries)->Args({4, 1})->Args({8, 1})->Args({8, 4});

void BM_EmpiricalMeasure(benchmark::State& state) {
    auto x = fsdim::gen_champernowne(2);
    const std::uint64_t n = 100000;
    const int depth = static_cast<int>(state.range(0));
    x.prefix(n + static_cast<std::uint64_t>(depth));
    for (auto _ : state) {
        auto nu = fsdim::empirical_measure(x, n, depth);
        benchmark::DoNotOptimize(nu.leaf_probs().data());
    }
}
BENCHMARK(BM_EmpiricalMeasure)->Arg(12)->Arg(20);

}  // namespace
