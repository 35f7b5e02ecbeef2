#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fsdim/sequence.hpp"

namespace fsdim {

enum class CountMode { sliding, disjoint };

/// Empirical distribution of length-l blocks over a prefix, kept as exact
/// integer counts (dense over all base^l blocks). Probabilities are only
/// materialized at entropy evaluation.
struct BlockDistribution {
    int base = 2;
    int block_length = 1;
    CountMode mode = CountMode::sliding;
    std::uint64_t window_length = 0;
    std::uint64_t total = 0;                 // sliding: n-l+1, disjoint: floor(n/l)
    std::vector<std::uint64_t> counts;       // indexed by packed block value

    static constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 24;

    double probability(std::uint64_t packed) const {
        return static_cast<double>(counts[packed]) / static_cast<double>(total);
    }
    double probability(std::span<const std::uint8_t> w) const;

    /// True when the packed index denotes a constant block c^l.
    bool is_constant_block(std::uint64_t packed) const;
};

std::uint64_t pack_block(std::span<const std::uint8_t> w, int base);

/// Dense sliding-window counts of length-l blocks over starts [0, n-l].
std::vector<std::uint64_t> sliding_counts(std::span<const std::uint8_t> digits, int base, int l);

/// Chunk-merged parallel version; agrees with sliding_counts exactly.
std::vector<std::uint64_t> sliding_counts_parallel(std::span<const std::uint8_t> digits, int base,
                                                   int l, int threads);

BlockDistribution sliding_distribution(std::span<const std::uint8_t> digits, int base, int l);
BlockDistribution disjoint_distribution(std::span<const std::uint8_t> digits, int base, int l);

BlockDistribution sliding_distribution(const SymbolSequence& x, std::uint64_t n, int l);
BlockDistribution disjoint_distribution(const SymbolSequence& x, std::uint64_t n, int l);

/// Block entropy normalized to [0,1]: -(1/(l log b)) sum p log p, 0 log 0 = 0.
double normalized_entropy(const BlockDistribution& d);

/// Same sum with the constant blocks excluded (0^l and 1^l for base 2).
/// Satisfies restricted <= full <= restricted + 2/l for base 2.
double restricted_entropy(const BlockDistribution& d);

}  // namespace fsdim
