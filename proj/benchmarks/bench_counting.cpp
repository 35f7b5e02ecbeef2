#include <benchmark/benchmark.h>

#include "fsdim/block_distribution.hpp"
#include "fsdim/generators.hpp"

namespace {

const std::vector<std::uint8_t>& corpus() {
    static std::vector<std::uint8_t> digits = [] {
        auto x = fsdim::gen_champernowne(2);
        auto span = x.prefix(1 << 22);
        return std::vector<std::uint8_t>(span.begin(), span.end());
    }();
    return digits;
}

void BM_SlidingCounts(benchmark::State& state) {
    const auto& digits = corpus();
    const int l = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto counts = fsdim::sliding_counts(digits, 2, l);
        benchmark::DoNotOptimize(counts.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(digits.size()));
}
BENCHMARK(BM_SlidingCounts)->Arg(2)->Arg(8)->Arg(12);

void BM_SlidingCountsParallel(benchmark::State& state) {
    const auto& digits = corpus();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto counts = fsdim::sliding_counts_parallel(digits, 2, 8, threads);
        benchmark::DoNotOptimize(counts.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(digits.size()));
}
BENCHMARK(BM_SlidingCountsParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_DisjointEntropy(benchmark::State& state) {
    const auto& digits = corpus();
    for (auto _ : state) {
        auto d = fsdim::disjoint_distribution(std::span<const std::uint8_t>(digits), 2,
                                              static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(fsdim::normalized_entropy(d));
    }
}
BENCHMARK(BM_DisjointEntropy)->Arg(4)->Arg(8);

}  // namespace
