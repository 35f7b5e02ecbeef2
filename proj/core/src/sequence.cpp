#include "fsdim/sequence.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace fsdim {

namespace {

class BufferSource final : public DigitSource {
public:
    explicit BufferSource(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {}

    std::size_t fill(std::vector<std::uint8_t>& out, std::size_t want) override {
        std::size_t take = std::min(want, digits_.size() - pos_);
        out.insert(out.end(), digits_.begin() + static_cast<std::ptrdiff_t>(pos_),
                   digits_.begin() + static_cast<std::ptrdiff_t>(pos_ + take));
        pos_ += take;
        return take;
    }

private:
    std::vector<std::uint8_t> digits_;
    std::size_t pos_ = 0;
};

}  // namespace

SymbolSequence::SymbolSequence(int base, std::shared_ptr<DigitSource> source) {
    if (base < 2) throw std::invalid_argument("SymbolSequence: base must be >= 2");
    if (!source) throw std::invalid_argument("SymbolSequence: null source");
    state_ = std::make_shared<State>();
    state_->base = base;
    state_->source = std::move(source);
}

SymbolSequence SymbolSequence::from_digits(int base, std::vector<std::uint8_t> digits) {
    for (std::uint8_t d : digits) {
        if (d >= base) throw std::invalid_argument("from_digits: digit out of range for base");
    }
    return SymbolSequence(base, std::make_shared<BufferSource>(std::move(digits)));
}

SymbolSequence SymbolSequence::from_string(int base, std::string_view ascii) {
    if (base < 2 || base > 10)
        throw std::invalid_argument("from_string: ASCII digits support bases 2..10");
    std::vector<std::uint8_t> digits;
    digits.reserve(ascii.size());
    for (char c : ascii) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c < '0' || c >= '0' + base)
            throw std::invalid_argument(std::string("from_string: invalid digit '") + c + "'");
        digits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return from_digits(base, std::move(digits));
}

std::size_t SymbolSequence::ensure(std::size_t n) const {
    State& st = *state_;
    std::size_t need = offset_ + n;
    while (st.cache.size() < need && !st.exhausted) {
        std::size_t want = need - st.cache.size();
        std::size_t got = st.source->fill(st.cache, want);
        if (got < want) st.exhausted = true;
    }
    std::size_t have = st.cache.size();
    return have > offset_ ? std::min(n, have - offset_) : 0;
}

std::span<const std::uint8_t> SymbolSequence::prefix(std::size_t n) const {
    std::size_t got = ensure(n);
    if (got < n) throw TruncationError(n, got);
    return {state_->cache.data() + offset_, n};
}

SymbolSequence SymbolSequence::shifted(std::size_t j) const {
    return SymbolSequence(state_, offset_ + j);
}

Evaluation evaluate_prefix(const SymbolSequence& x, std::size_t offset, int depth) {
    if (depth < 1) throw std::invalid_argument("evaluate_prefix: depth must be >= 1");
    std::span<const std::uint8_t> d = x.shifted(offset).prefix(static_cast<std::size_t>(depth));
    const double b = x.base();
    double v = 0.0;
    for (int i = depth - 1; i >= 0; --i) v = (v + d[static_cast<std::size_t>(i)]) / b;
    double err = std::pow(1.0 / b, depth);
    return {v, err};
}

}  // namespace fsdim
