#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fsdim/sequence.hpp"

namespace fsdim {

/// Finitely represented measure on sequence space: cylinder probabilities up
/// to a fixed depth, stored densely at the deepest level and marginalized on
/// demand so additive consistency holds by construction. Empirical measures
/// additionally carry exact integer counts.
class CylinderMeasure {
public:
    CylinderMeasure(int base, int depth, std::vector<double> leaf_probs);

    static CylinderMeasure from_counts(int base, int depth, std::vector<std::uint64_t> leaf_counts,
                                       std::uint64_t sample_count);

    int base() const noexcept { return base_; }
    int depth() const noexcept { return depth_; }
    bool has_counts() const noexcept { return !counts_.empty(); }
    std::uint64_t sample_count() const noexcept { return samples_; }

    /// prob(empty word) = 1.
    double prob(std::span<const std::uint8_t> w) const;
    double prob(const std::string& w) const;

    /// Probability of the cylinder with packed index `idx` at depth `len`.
    double prob_index(int len, std::uint64_t idx) const;

    /// Exact count behind prob_index; only for count-backed measures.
    std::uint64_t count_index(int len, std::uint64_t idx) const;

    /// max over w of |prob(w) - sum_a prob(wa)|, exact 0 for count-backed
    /// measures by construction.
    double consistency_defect() const;

    const std::vector<double>& leaf_probs() const noexcept { return levels_.back(); }

private:
    void build_levels(std::vector<double> leaves);

    int base_;
    int depth_;
    std::uint64_t samples_ = 0;
    std::vector<std::vector<double>> levels_;        // levels_[d-1]: probs at depth d
    std::vector<std::vector<std::uint64_t>> counts_;  // same shape when count-backed
};

/// Empirical measure nu_n of x: prob(C_w) is the sliding count of w over the
/// window x_0^{n+|w|-2} divided by n, i.e. the average of point masses at
/// the first n shifts of x, restricted to depth L.
CylinderMeasure empirical_measure(const SymbolSequence& x, std::uint64_t n, int depth);

}  // namespace fsdim
