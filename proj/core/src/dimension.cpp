#include "fsdim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsdim {

namespace {

// Extends sliding counts from starts [done, upto).
void extend_sliding(std::span<const std::uint8_t> digits, int base, int l, std::size_t done,
                    std::size_t upto, std::vector<std::uint64_t>& counts) {
    const std::uint64_t b = static_cast<std::uint64_t>(base);
    for (std::size_t start = done; start < upto; ++start) {
        std::uint64_t packed = 0;
        for (int j = 0; j < l; ++j) packed = packed * b + digits[start + static_cast<std::size_t>(j)];
        ++counts[packed];
    }
}

}  // namespace

DimensionEstimate dimension_profile(const SymbolSequence& x, std::vector<int> block_lengths,
                                    std::vector<std::uint64_t> checkpoints, CountMode mode,
                                    double burn_in_fraction) {
    if (block_lengths.empty()) throw std::invalid_argument("dimension_profile: no block lengths");
    if (checkpoints.empty()) throw std::invalid_argument("dimension_profile: empty checkpoint set");
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
        throw std::invalid_argument("dimension_profile: checkpoints must be increasing");
    std::sort(block_lengths.begin(), block_lengths.end());
    const int l_max = block_lengths.back();
    if (static_cast<std::uint64_t>(l_max) > checkpoints.front())
        throw std::invalid_argument("dimension_profile: max block length exceeds first checkpoint");

    DimensionEstimate est;
    est.base = x.base();
    est.mode = mode;
    est.block_lengths = block_lengths;
    est.checkpoints = checkpoints;
    est.burn_in_fraction = burn_in_fraction;

    const std::uint64_t n_max = checkpoints.back();
    std::span<const std::uint8_t> digits = x.prefix(n_max);

    for (int l : block_lengths) {
        std::vector<double> row;
        row.reserve(checkpoints.size());
        if (mode == CountMode::sliding) {
            BlockDistribution d;
            d.base = est.base;
            d.block_length = l;
            d.mode = CountMode::sliding;
            d.counts = sliding_counts(digits.first(static_cast<std::size_t>(checkpoints.front())),
                                      est.base, l);
            d.total = checkpoints.front() - static_cast<std::uint64_t>(l) + 1;
            d.window_length = checkpoints.front();
            row.push_back(normalized_entropy(d));
            for (std::size_t c = 1; c < checkpoints.size(); ++c) {
                extend_sliding(digits, est.base, l,
                               static_cast<std::size_t>(checkpoints[c - 1]) - static_cast<std::size_t>(l) + 1,
                               static_cast<std::size_t>(checkpoints[c]) - static_cast<std::size_t>(l) + 1,
                               d.counts);
                d.total = checkpoints[c] - static_cast<std::uint64_t>(l) + 1;
                d.window_length = checkpoints[c];
                row.push_back(normalized_entropy(d));
            }
        } else {
            for (std::uint64_t n : checkpoints)
                row.push_back(normalized_entropy(
                    disjoint_distribution(digits.first(static_cast<std::size_t>(n)), est.base, l)));
        }
        est.entropy.push_back(std::move(row));
    }

    const double cut = burn_in_fraction * static_cast<double>(n_max);
    for (std::size_t li = 0; li < est.block_lengths.size(); ++li) {
        DimensionEstimate::Tail tail{1.0, 0.0};
        bool seen = false;
        for (std::size_t c = 0; c < checkpoints.size(); ++c) {
            if (static_cast<double>(checkpoints[c]) < cut && c + 1 != checkpoints.size()) continue;
            tail.min = seen ? std::min(tail.min, est.entropy[li][c]) : est.entropy[li][c];
            tail.max = seen ? std::max(tail.max, est.entropy[li][c]) : est.entropy[li][c];
            seen = true;
        }
        est.tails.push_back(tail);
    }
    est.dim_lo = est.tails.back().min;
    est.dim_hi = est.tails.back().max;
    return est;
}

std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t start, std::uint64_t limit) {
    if (start == 0 || start > limit)
        throw std::invalid_argument("geometric_checkpoints: need 0 < start <= limit");
    std::vector<std::uint64_t> cps;
    for (std::uint64_t n = start; n < limit; n *= 2) {
        cps.push_back(n);
        if (n > limit / 2) break;
    }
    if (cps.empty() || cps.back() != limit) cps.push_back(limit);
    return cps;
}

}  // namespace fsdim
