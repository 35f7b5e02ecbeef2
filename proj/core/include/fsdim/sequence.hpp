#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fsdim {

/// Thrown when a finite digit source runs out before a requested prefix
/// length is reached. `available` is the number of digits that exist.
class TruncationError : public std::runtime_error {
public:
    TruncationError(std::size_t requested, std::size_t available)
        : std::runtime_error("digit source exhausted: requested " +
                             std::to_string(requested) + " digits, only " +
                             std::to_string(available) + " available"),
          requested_(requested),
          available_(available) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t available() const noexcept { return available_; }

private:
    std::size_t requested_;
    std::size_t available_;
};

/// Deterministic producer of base-b digits. Implementations append digits in
/// order and must be replayable: two sources constructed with the same
/// parameters emit identical streams.
class DigitSource {
public:
    virtual ~DigitSource() = default;

    /// Appends up to `want` digits to `out`. A return value smaller than
    /// `want` means the source is exhausted (finite sources only).
    virtual std::size_t fill(std::vector<std::uint8_t>& out, std::size_t want) = 0;
};

/// A base-b digit sequence: a lazily materialized cache in front of a
/// deterministic generator. Shift views share the cache of the sequence
/// they were derived from.
///
/// Materialization (`ensure`, `prefix`) is single-writer; reading already
/// materialized positions from multiple threads is safe as long as no
/// concurrent `ensure` grows the cache. Callers that fan out work
/// materialize first and hand out spans.
class SymbolSequence {
public:
    SymbolSequence(int base, std::shared_ptr<DigitSource> source);

    /// Finite sequence over an explicit digit buffer.
    static SymbolSequence from_digits(int base, std::vector<std::uint8_t> digits);

    /// Finite sequence from ASCII digits ('0'..'9'), whitespace ignored.
    static SymbolSequence from_string(int base, std::string_view ascii);

    int base() const noexcept { return state_->base; }

    /// Offset of this view into the underlying stream.
    std::size_t offset() const noexcept { return offset_; }

    /// Materializes digits so that positions [0, n) of this view are
    /// readable. Returns the count actually available for this view,
    /// which is < n only when a finite source is exhausted.
    std::size_t ensure(std::size_t n) const;

    /// Digit at position i of this view. pre: i was covered by ensure().
    std::uint8_t at(std::size_t i) const { return state_->cache[offset_ + i]; }

    /// Materialized view of positions [0, n). Throws TruncationError if the
    /// source cannot supply n digits. The span is valid until the next
    /// ensure() that grows the cache.
    std::span<const std::uint8_t> prefix(std::size_t n) const;

    /// The left shift T^j: position i of the result is position i+j of this
    /// view. Shares the digit cache.
    SymbolSequence shifted(std::size_t j) const;

private:
    struct State {
        int base;
        std::shared_ptr<DigitSource> source;
        std::vector<std::uint8_t> cache;
        bool exhausted = false;
    };

    SymbolSequence(std::shared_ptr<State> state, std::size_t offset)
        : state_(std::move(state)), offset_(offset) {}

    std::shared_ptr<State> state_;
    std::size_t offset_ = 0;
};

/// Result of the truncated evaluation map.
struct Evaluation {
    double value;        // sum_{i<depth} x_{offset+i} b^{-(i+1)}
    double error_bound;  // |v_b(T^offset x) - value| <= b^{-depth}
};

/// Evaluation map v_b on the shifted sequence, truncated at `depth` digits.
/// Throws TruncationError when the source yields fewer than offset+depth
/// digits.
Evaluation evaluate_prefix(const SymbolSequence& x, std::size_t offset, int depth);

}  // namespace fsdim
