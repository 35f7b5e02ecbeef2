#include "fsdim/block_distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace fsdim {

namespace {

std::uint64_t cells_for(int base, int l) {
    std::uint64_t cells = 1;
    for (int i = 0; i < l; ++i) {
        cells *= static_cast<std::uint64_t>(base);
        if (cells > BlockDistribution::kMaxCells)
            throw std::invalid_argument("block length too large for dense counting (base^l > 2^24)");
    }
    return cells;
}

void check_args(std::uint64_t n, int l) {
    if (l < 1) throw std::invalid_argument("block length must be >= 1");
    if (n < static_cast<std::uint64_t>(l))
        throw std::invalid_argument("window shorter than block length");
}

// Counts sliding blocks with starts in [from, to).
void count_range(std::span<const std::uint8_t> digits, int base, int l, std::size_t from,
                 std::size_t to, std::vector<std::uint64_t>& counts) {
    const std::uint64_t b = static_cast<std::uint64_t>(base);
    std::uint64_t modulus = 1;
    for (int i = 0; i < l - 1; ++i) modulus *= b;

    std::uint64_t packed = 0;
    for (std::size_t i = from; i < from + static_cast<std::size_t>(l); ++i)
        packed = packed * b + digits[i];
    ++counts[packed];
    for (std::size_t start = from + 1; start < to; ++start) {
        packed = (packed % modulus) * b + digits[start + static_cast<std::size_t>(l) - 1];
        ++counts[packed];
    }
}

}  // namespace

std::uint64_t pack_block(std::span<const std::uint8_t> w, int base) {
    std::uint64_t packed = 0;
    for (std::uint8_t d : w) packed = packed * static_cast<std::uint64_t>(base) + d;
    return packed;
}

double BlockDistribution::probability(std::span<const std::uint8_t> w) const {
    if (static_cast<int>(w.size()) != block_length)
        throw std::invalid_argument("probability: block length mismatch");
    return probability(pack_block(w, base));
}

bool BlockDistribution::is_constant_block(std::uint64_t packed) const {
    const std::uint64_t b = static_cast<std::uint64_t>(base);
    std::uint64_t last = packed % b;
    for (int i = 1; i < block_length; ++i) {
        packed /= b;
        if (packed % b != last) return false;
    }
    return true;
}

std::vector<std::uint64_t> sliding_counts(std::span<const std::uint8_t> digits, int base, int l) {
    check_args(digits.size(), l);
    std::vector<std::uint64_t> counts(cells_for(base, l), 0);
    count_range(digits, base, l, 0, digits.size() - static_cast<std::size_t>(l) + 1, counts);
    return counts;
}

std::vector<std::uint64_t> sliding_counts_parallel(std::span<const std::uint8_t> digits, int base,
                                                   int l, int threads) {
    check_args(digits.size(), l);
    const std::size_t starts = digits.size() - static_cast<std::size_t>(l) + 1;
    if (threads < 1) threads = 1;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(starts / 4096, 1));
    if (workers == 1) return sliding_counts(digits, base, l);

    std::vector<std::vector<std::uint64_t>> partial(workers,
                                                    std::vector<std::uint64_t>(cells_for(base, l), 0));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t from = starts * w / workers;
        std::size_t to = starts * (w + 1) / workers;
        pool.emplace_back([&, w, from, to] { count_range(digits, base, l, from, to, partial[w]); });
    }
    for (auto& t : pool) t.join();

    std::vector<std::uint64_t> counts(cells_for(base, l), 0);
    for (const auto& p : partial)
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += p[i];
    return counts;
}

BlockDistribution sliding_distribution(std::span<const std::uint8_t> digits, int base, int l) {
    BlockDistribution d;
    d.base = base;
    d.block_length = l;
    d.mode = CountMode::sliding;
    d.window_length = digits.size();
    d.counts = sliding_counts(digits, base, l);
    d.total = digits.size() - static_cast<std::uint64_t>(l) + 1;
    return d;
}

BlockDistribution disjoint_distribution(std::span<const std::uint8_t> digits, int base, int l) {
    check_args(digits.size(), l);
    BlockDistribution d;
    d.base = base;
    d.block_length = l;
    d.mode = CountMode::disjoint;
    d.window_length = digits.size();
    d.counts.assign(cells_for(base, l), 0);
    const std::uint64_t b = static_cast<std::uint64_t>(base);
    const std::size_t blocks = digits.size() / static_cast<std::size_t>(l);
    for (std::size_t i = 0; i < blocks; ++i) {
        std::uint64_t packed = 0;
        for (std::size_t j = 0; j < static_cast<std::size_t>(l); ++j)
            packed = packed * b + digits[i * static_cast<std::size_t>(l) + j];
        ++d.counts[packed];
    }
    d.total = blocks;
    return d;
}

BlockDistribution sliding_distribution(const SymbolSequence& x, std::uint64_t n, int l) {
    check_args(n, l);
    return sliding_distribution(x.prefix(n), x.base(), l);
}

BlockDistribution disjoint_distribution(const SymbolSequence& x, std::uint64_t n, int l) {
    check_args(n, l);
    return disjoint_distribution(x.prefix(n), x.base(), l);
}

namespace {

// H = log T - (1/T) sum c log c, in units of log(base), over selected cells.
double entropy_impl(const BlockDistribution& d, bool skip_constant) {
    if (d.total == 0) return 0.0;
    double sum_clogc = 0.0;
    double comp = 0.0;  // Kahan
    double kept = 0.0;
    for (std::uint64_t packed = 0; packed < d.counts.size(); ++packed) {
        std::uint64_t c = d.counts[packed];
        if (c == 0) continue;
        if (skip_constant && d.is_constant_block(packed)) continue;
        double term = static_cast<double>(c) * std::log(static_cast<double>(c));
        double y = term - comp;
        double t = sum_clogc + y;
        comp = (t - sum_clogc) - y;
        sum_clogc = t;
        kept += static_cast<double>(c);
    }
    const double T = static_cast<double>(d.total);
    double h = kept / T * std::log(T) - sum_clogc / T;
    double norm = static_cast<double>(d.block_length) * std::log(static_cast<double>(d.base));
    double value = h / norm;
    return value < 0.0 ? 0.0 : value;
}

}  // namespace

double normalized_entropy(const BlockDistribution& d) { return entropy_impl(d, false); }

double restricted_entropy(const BlockDistribution& d) { return entropy_impl(d, true); }

}  // namespace fsdim
