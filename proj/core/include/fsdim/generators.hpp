#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "fsdim/analytic_measure.hpp"
#include "fsdim/sequence.hpp"

namespace fsdim {

/// A cyclic cell pattern of fixed digits and wildcards. Wildcard cells are
/// filled from a donor sequence, fixed cells emit their digit.
struct DilutionPattern {
    static constexpr std::uint8_t kWildcard = 0xff;

    std::vector<std::uint8_t> cells;

    /// Parses "0*", "0**0", ... ('*' or '_' marks a wildcard).
    static DilutionPattern parse(std::string_view text, int base);

    std::size_t length() const noexcept { return cells.size(); }
    std::size_t wildcard_count() const;

    /// A pattern without wildcards yields an eventually periodic sequence;
    /// allowed, but flagged so callers can warn.
    bool is_constant() const { return wildcard_count() == 0; }

    void validate(int base) const;
};

/// Stagewise prefix plan for alternating constructions. Stage i (1-based)
/// contributes stage_lengths[i-1] digits, and every stage end is rounded up
/// to a multiple of `alignment`.
struct StageSchedule {
    std::vector<std::uint64_t> stage_lengths;
    std::uint64_t alignment = 1;

    static StageSchedule geometric(std::uint64_t first, std::uint64_t ratio, int stages,
                                   std::uint64_t alignment);

    int stages() const noexcept { return static_cast<int>(stage_lengths.size()); }

    /// Cumulative digit position at which stage i (1-based) ends, including
    /// alignment rounding. stage_end(0) = 0.
    std::uint64_t stage_end(int i) const;
    std::vector<std::uint64_t> stage_ends() const;

    void validate(bool require_nondecreasing = false) const;
};

/// Total order used to walk the depth-l word catalog. complement_paired
/// alternates each word with its digitwise complement (binary alphabets),
/// which keeps running digit frequencies balanced within a catalog.
enum class StringOrder { lexicographic, complement_paired };

/// Per-stage parameters for the measure-generalized Champernowne
/// construction: stage i emits block_repeats[i-1] copies of the depth-i
/// word catalog, each word w repeated ceil(M_i * mu(C_w)) times in
/// string_order.
struct MuChampernowneSchedule {
    std::vector<double> repetition_factors;   // M_i
    std::vector<std::uint64_t> block_repeats;  // l_i
    StringOrder string_order = StringOrder::lexicographic;

    int stages() const noexcept { return static_cast<int>(repetition_factors.size()); }

    /// Desk-scale default: legal minimum M_i per depth, block repeats chosen
    /// so the stages roughly split `target_digits`, deepest stage last.
    static MuChampernowneSchedule desk(const AnalyticMeasure& mu, int max_depth,
                                       std::uint64_t target_digits);

    /// Super-exponential Bernoulli schedule, M_i = min(p,1-p)^(-2i),
    /// l_i = i^(2i); the regime in which the construction's guarantees are
    /// asymptotic. Rejects stage counts whose parameters overflow.
    static MuChampernowneSchedule asymptotic_bernoulli(double p, int stages);

    void validate(const AnalyticMeasure& mu) const;
};

/// Concatenation of the base-b numerals of 1, 2, 3, ...
SymbolSequence gen_champernowne(int base);

/// All digits equal to `digit`.
SymbolSequence gen_constant(int base, std::uint8_t digit);

/// Cyclic repetition of an explicit digit block.
SymbolSequence gen_periodic(int base, std::vector<std::uint8_t> period);

/// Repeats `pattern` cyclically, wildcards consuming successive digits of y.
SymbolSequence gen_diluted(const SymbolSequence& y, const DilutionPattern& pattern);

/// Stage i of the schedule is filled with pat_odd (i odd) or pat_even
/// (i even), each stage restarting its pattern at phase 0; the wildcard
/// cursor into y continues across stages. After the last stage the final
/// pattern continues indefinitely.
SymbolSequence gen_alternating(const DilutionPattern& pat_odd, const DilutionPattern& pat_even,
                               const SymbolSequence& y, const StageSchedule& schedule);

/// Measure-generalized Champernowne sequence. Rejects measures that are not
/// shift-invariant (checked via cylinder additivity at small depths) and
/// schedules whose repeat counts overflow. After the last scheduled stage
/// the final stage's block repeats indefinitely.
SymbolSequence gen_mu_champernowne(const AnalyticMeasure& mu, const MuChampernowneSchedule& schedule);

}  // namespace fsdim
