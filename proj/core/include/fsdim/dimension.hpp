#pragma once

#include <cstdint>
#include <vector>

#include "fsdim/block_distribution.hpp"
#include "fsdim/sequence.hpp"

namespace fsdim {

/// Finite-n proxy for the finite-state dimension pair: block entropies per
/// (block length, checkpoint), tail statistics past a burn-in, and the
/// lower/upper readings at the largest block length.
struct DimensionEstimate {
    int base = 2;
    CountMode mode = CountMode::sliding;
    std::vector<int> block_lengths;
    std::vector<std::uint64_t> checkpoints;
    std::vector<std::vector<double>> entropy;  // [l index][checkpoint index]
    double burn_in_fraction = 0.5;

    struct Tail {
        double min = 0.0;
        double max = 0.0;
    };
    std::vector<Tail> tails;  // per block length, over checkpoints past burn-in

    double dim_lo = 0.0;  // tail min at the largest block length
    double dim_hi = 0.0;  // tail max at the largest block length
};

/// Fills the entropy matrix over the given checkpoints (increasing) and
/// block lengths. Tail statistics cover checkpoints n with
/// n >= burn_in_fraction * max checkpoint.
DimensionEstimate dimension_profile(const SymbolSequence& x, std::vector<int> block_lengths,
                                    std::vector<std::uint64_t> checkpoints, CountMode mode,
                                    double burn_in_fraction = 0.5);

/// Geometric checkpoint ladder: start, 2*start, ... capped at limit, with
/// limit itself always included.
std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t start, std::uint64_t limit);

}  // namespace fsdim
