#include <benchmark/benchmark.h>

#include "fsdim/generators.hpp"

namespace {

void BM_Champernowne(benchmark::State& state) {
    const std::size_t n = 1 << 22;
    for (auto _ : state) {
        auto x = fsdim::gen_champernowne(2);
        benchmark::DoNotOptimize(x.prefix(n).data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Champernowne);

void BM_Diluted(benchmark::State& state) {
    const std::size_t n = 1 << 22;
    for (auto _ : state) {
        auto a = fsdim::gen_diluted(fsdim::gen_champernowne(2),
                                    fsdim::DilutionPattern::parse("0*", 2));
        benchmark::DoNotOptimize(a.prefix(n).data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Diluted);

void BM_MuChampernowne(benchmark::State& state) {
    const std::size_t n = 1 << 20;
    auto mu = fsdim::AnalyticMeasure::bernoulli({0.89, 0.11});
    auto sched = fsdim::MuChampernowneSchedule::desk(mu, 5, n);
    for (auto _ : state) {
        auto x = fsdim::gen_mu_champernowne(mu, sched);
        benchmark::DoNotOptimize(x.prefix(n).data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(BM_MuChampernowne);

}  // namespace

BENCHMARK_MAIN();
