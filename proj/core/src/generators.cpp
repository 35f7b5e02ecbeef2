#include "fsdim/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fsdim {

namespace {

std::uint64_t round_up(std::uint64_t v, std::uint64_t align) {
    return (v + align - 1) / align * align;
}

class ChampernowneSource final : public DigitSource {
public:
    explicit ChampernowneSource(int base) : base_(static_cast<std::uint64_t>(base)) {}

    std::size_t fill(std::vector<std::uint8_t>& out, std::size_t want) override {
        std::size_t emitted = 0;
        while (emitted < want) {
            if (pos_ == numeral_.size()) {
                ++current_;
                numeral_.clear();
                for (std::uint64_t v = current_; v > 0; v /= base_)
                    numeral_.push_back(static_cast<std::uint8_t>(v % base_));
                std::reverse(numeral_.begin(), numeral_.end());
                pos_ = 0;
            }
            std::size_t take = std::min(want - emitted, numeral_.size() - pos_);
            out.insert(out.end(), numeral_.begin() + static_cast<std::ptrdiff_t>(pos_),
                       numeral_.begin() + static_cast<std::ptrdiff_t>(pos_ + take));
            pos_ += take;
            emitted += take;
        }
        return emitted;
    }

private:
    std::uint64_t base_;
    std::uint64_t current_ = 0;
    std::vector<std::uint8_t> numeral_;
    std::size_t pos_ = 0;
};

class ConstantSource final : public DigitSource {
public:
    explicit ConstantSource(std::uint8_t digit) : digit_(digit) {}

    std::size_t fill(std::vector<std::uint8_t>& out, std::size_t want) override {
        out.insert(out.end(), want, digit_);
        return want;
    }

private:
    std::uint8_t digit_;
};

class PeriodicSource final : public DigitSource {
public:
    explicit PeriodicSource(std::vector<std::uint8_t> period) : period_(std::move(period)) {}

    std::size_t fill(std::vector<std::uint8_t>& out, std::size_t want) override {
        for (std::size_t i = 0; i < want; ++i) {
            out.push_back(period_[pos_]);
            if (++pos_ == period_.size()) pos_ = 0;
        }
        return want;
    }

private:
    std::vector<std::uint8_t> period_;
    std::size_t pos_ = 0;
};

// Pulls donor digits for wildcard cells in chunks.
class WildcardCursor {
public:
    explicit WildcardCursor(SymbolSequence y) : y_(std::move(y)) {}

    // Returns false when the donor is exhausted.
    bool next(std::uint8_t& d) {
        if (pos_ == have_) {
            std::size_t target = std::max<std::size_t>(2 * have_, 4096);
            have_ = y_.ensure(target);
            if (pos_ == have_) return false;
        }
        d = y_.at(pos_++);
        return true;
    }

private:
    SymbolSequence y_;
    std::size_t pos_ = 0;
    std::size_t have_ = 0;
};

class DilutedSource final : public DigitSource {
public:
    DilutedSource(SymbolSequence y, DilutionPattern pattern)
        : cursor_(std::move(y)), pattern_(std::move(pattern)) {}

    std::size_t fill(std::vector<std::uint8_t>& out, std::size_t want) override {
        for (std::size_t i = 0; i < want; ++i) {
            std::uint8_t cell = pattern_.cells[phase_];
            if (cell == DilutionPattern::kWildcard) {
                if (!cursor_.next(cell)) return i;
            }
            out.push_back(cell);
            if (++phase_ == pattern_.cells.size()) phase_ = 0;
        }
        return want;
    }

private:
    WildcardCursor cursor_;
    DilutionPattern pattern_;
    std::size_t phase_ = 0;
};

class AlternatingSource final : public DigitSource {
public:
    AlternatingSource(DilutionPattern odd, DilutionPattern even, SymbolSequence y,
                      StageSchedule schedule)
        : odd_(std::move(odd)),
          even_(std::move(even)),
          cursor_(std::move(y)),
          ends_(schedule.stage_ends()) {}

    std::size_t fill(std::vector<std::uint8_t>& out, std::size_t want) override {
        for (std::size_t i = 0; i < want; ++i) {
            // Stage ends land on alignment boundaries; stage index is 1-based
            // and the last stage's pattern continues past the schedule.
            if (stage_ < ends_.size() && position_ == ends_[stage_]) {
                ++stage_;
                phase_ = 0;
            }
            const std::size_t effective = std::min(stage_, ends_.size() - 1);
            const DilutionPattern& pat = (effective % 2 == 0) ? odd_ : even_;
            std::uint8_t cell = pat.cells[phase_];
            if (cell == DilutionPattern::kWildcard) {
                if (!cursor_.next(cell)) return i;
            }
            out.push_back(cell);
            ++position_;
            if (++phase_ == pat.cells.size()) phase_ = 0;
        }
        return want;
    }

private:
    DilutionPattern odd_;
    DilutionPattern even_;
    WildcardCursor cursor_;
    std::vector<std::uint64_t> ends_;  // cumulative, aligned
    std::uint64_t position_ = 0;
    std::size_t stage_ = 0;  // completed stages
    std::size_t phase_ = 0;
};

// Stage state for the mu-Champernowne emission: stage i walks the depth-i
// word catalog in the schedule's string order, repeating word w
// ceil(M_i mu(C_w)) times, the whole catalog block_repeats[i-1] times.
class MuChampernowneSource final : public DigitSource {
public:
    MuChampernowneSource(AnalyticMeasure mu, MuChampernowneSchedule schedule)
        : mu_(std::move(mu)), schedule_(std::move(schedule)) {
        begin_stage(1);
    }

    std::size_t fill(std::vector<std::uint8_t>& out, std::size_t want) override {
        std::size_t emitted = 0;
        while (emitted < want) {
            if (word_repeat_ == word_repeats_) load_word();
            std::size_t take = std::min(want - emitted, word_.size() - word_pos_);
            out.insert(out.end(), word_.begin() + static_cast<std::ptrdiff_t>(word_pos_),
                       word_.begin() + static_cast<std::ptrdiff_t>(word_pos_ + take));
            word_pos_ += take;
            emitted += take;
            if (word_pos_ == word_.size()) {
                word_pos_ = 0;
                ++word_repeat_;
            }
        }
        return emitted;
    }

private:
    void begin_stage(int stage) {
        stage_ = stage;
        depth_ = std::min<int>(stage, schedule_.stages());
        block_repeat_ = 0;
        word_index_ = 0;
        word_.assign(static_cast<std::size_t>(depth_), 0);
        word_pos_ = 0;
        word_repeat_ = 0;
        word_repeats_ = 0;
        load_word();
    }

    // Repeat count for the current word; zero-probability words are skipped.
    void load_word() {
        const int b = mu_.base();
        const double M = schedule_.repetition_factors[static_cast<std::size_t>(depth_ - 1)];
        const std::uint64_t total_words = ipow(b, depth_);
        while (true) {
            if (word_index_ == total_words) {
                ++block_repeat_;
                word_index_ = 0;
                if (block_repeat_ >= schedule_.block_repeats[static_cast<std::size_t>(depth_ - 1)]) {
                    if (stage_ < schedule_.stages()) {
                        begin_stage(stage_ + 1);
                        return;
                    }
                    // Schedule exhausted: keep repeating the deepest catalog.
                    block_repeat_ = 0;
                }
            }
            unpack_word(word_index_);
            double p = mu_.cylinder_prob(word_);
            if (p > 0.0) {
                double reps = std::ceil(M * p);
                if (!(reps < 9.0e18))
                    throw std::invalid_argument("gen_mu_champernowne: repeat count overflow");
                word_repeats_ = static_cast<std::uint64_t>(reps);
                word_repeat_ = 0;
                word_pos_ = 0;
                ++word_index_;
                return;
            }
            ++word_index_;
        }
    }

    void unpack_word(std::uint64_t index) {
        const int b = mu_.base();
        if (schedule_.string_order == StringOrder::complement_paired) {
            // pair j/2 is the j/2-th word with leading digit 0; odd members
            // are digitwise complements, so each word appears exactly once.
            std::uint64_t value = index >> 1;
            if (index & 1) value = ~value & ((std::uint64_t{1} << depth_) - 1);
            index = value;
        }
        for (int i = depth_ - 1; i >= 0; --i) {
            word_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index % b);
            index /= static_cast<std::uint64_t>(b);
        }
    }

    static std::uint64_t ipow(int b, int e) {
        std::uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(b);
        return r;
    }

    AnalyticMeasure mu_;
    MuChampernowneSchedule schedule_;
    int stage_ = 1;
    int depth_ = 1;
    std::uint64_t block_repeat_ = 0;
    std::uint64_t word_index_ = 0;
    std::vector<std::uint8_t> word_;
    std::size_t word_pos_ = 0;
    std::uint64_t word_repeat_ = 0;
    std::uint64_t word_repeats_ = 0;
};

}  // namespace

DilutionPattern DilutionPattern::parse(std::string_view text, int base) {
    DilutionPattern pat;
    for (char c : text) {
        if (c == '*' || c == '_') {
            pat.cells.push_back(kWildcard);
        } else if (c >= '0' && c < '0' + std::min(base, 10)) {
            pat.cells.push_back(static_cast<std::uint8_t>(c - '0'));
        } else {
            throw std::invalid_argument(std::string("DilutionPattern: invalid cell '") + c + "'");
        }
    }
    pat.validate(base);
    return pat;
}

std::size_t DilutionPattern::wildcard_count() const {
    return static_cast<std::size_t>(
        std::count(cells.begin(), cells.end(), kWildcard));
}

void DilutionPattern::validate(int base) const {
    if (cells.empty()) throw std::invalid_argument("DilutionPattern: empty pattern");
    for (std::uint8_t c : cells) {
        if (c != kWildcard && c >= base)
            throw std::invalid_argument("DilutionPattern: fixed digit out of range");
    }
}

StageSchedule StageSchedule::geometric(std::uint64_t first, std::uint64_t ratio, int stages,
                                       std::uint64_t alignment) {
    if (first == 0 || ratio == 0 || stages < 1)
        throw std::invalid_argument("StageSchedule::geometric: invalid parameters");
    StageSchedule s;
    s.alignment = alignment;
    std::uint64_t len = first;
    for (int i = 0; i < stages; ++i) {
        s.stage_lengths.push_back(len);
        if (i + 1 < stages) {
            if (len > std::numeric_limits<std::uint64_t>::max() / ratio)
                throw std::invalid_argument("StageSchedule::geometric: overflow");
            len *= ratio;
        }
    }
    s.validate();
    return s;
}

std::uint64_t StageSchedule::stage_end(int i) const {
    std::uint64_t end = 0;
    for (int s = 0; s < i && s < stages(); ++s)
        end = round_up(end + stage_lengths[static_cast<std::size_t>(s)], alignment);
    return end;
}

std::vector<std::uint64_t> StageSchedule::stage_ends() const {
    std::vector<std::uint64_t> ends;
    std::uint64_t end = 0;
    for (std::uint64_t len : stage_lengths) {
        end = round_up(end + len, alignment);
        ends.push_back(end);
    }
    return ends;
}

void StageSchedule::validate(bool require_nondecreasing) const {
    if (stage_lengths.empty()) throw std::invalid_argument("StageSchedule: no stages");
    if (alignment == 0) throw std::invalid_argument("StageSchedule: alignment must be >= 1");
    for (std::uint64_t len : stage_lengths)
        if (len == 0) throw std::invalid_argument("StageSchedule: zero stage length");
    if (require_nondecreasing) {
        for (std::size_t i = 1; i < stage_lengths.size(); ++i)
            if (stage_lengths[i] < stage_lengths[i - 1])
                throw std::invalid_argument("StageSchedule: stage lengths decrease");
    }
}

MuChampernowneSchedule MuChampernowneSchedule::desk(const AnalyticMeasure& mu, int max_depth,
                                                    std::uint64_t target_digits) {
    if (max_depth < 1) throw std::invalid_argument("desk schedule: max_depth must be >= 1");
    MuChampernowneSchedule s;
    // Per-stage block length at the legal minimum M_i = 1/m_i. Depths whose
    // single catalog block would overshoot the budget are dropped rather
    // than truncated; a cut catalog front-loads whatever the string order
    // puts first and skews every statistic.
    std::vector<double> block_len;
    for (int depth = 1; depth <= max_depth; ++depth) {
        double m_min = mu.min_positive_cylinder_prob(depth);
        double M = std::ceil(1.0 / m_min);
        // sum over words of ceil(M mu(w)) is close to M plus one per word.
        double words = std::pow(static_cast<double>(mu.base()), depth);
        double len = static_cast<double>(depth) * (M + words);
        if (depth > 1 && len > static_cast<double>(target_digits)) break;
        s.repetition_factors.push_back(M);
        block_len.push_back(len);
    }
    // Split the budget evenly over the retained stages; at least one repeat.
    double share = static_cast<double>(target_digits) / static_cast<double>(block_len.size());
    for (double len : block_len) {
        double reps = std::floor(share / len);
        s.block_repeats.push_back(reps < 1.0 ? 1 : static_cast<std::uint64_t>(reps));
    }
    return s;
}

MuChampernowneSchedule MuChampernowneSchedule::asymptotic_bernoulli(double p, int stages) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("asymptotic_bernoulli: p must be in (0,1)");
    MuChampernowneSchedule s;
    double q = std::min(p, 1.0 - p);
    for (int i = 1; i <= stages; ++i) {
        double M = std::pow(q, -2.0 * i);
        double reps = std::pow(static_cast<double>(i), 2.0 * i);
        if (!(M < 9.0e18) || !(reps < 9.0e18))
            throw std::invalid_argument("asymptotic_bernoulli: schedule overflows at stage " +
                                        std::to_string(i));
        s.repetition_factors.push_back(std::ceil(M));
        s.block_repeats.push_back(static_cast<std::uint64_t>(reps));
    }
    return s;
}

void MuChampernowneSchedule::validate(const AnalyticMeasure& mu) const {
    if (repetition_factors.empty() || repetition_factors.size() != block_repeats.size())
        throw std::invalid_argument("MuChampernowneSchedule: stage lists empty or mismatched");
    if (string_order == StringOrder::complement_paired && mu.base() != 2)
        throw std::invalid_argument(
            "MuChampernowneSchedule: complement_paired order is defined for binary alphabets");
    for (int i = 1; i <= stages(); ++i) {
        double M = repetition_factors[static_cast<std::size_t>(i - 1)];
        double m_min = mu.min_positive_cylinder_prob(i);
        if (M * m_min < 1.0 - 1e-9)
            throw std::invalid_argument(
                "MuChampernowneSchedule: M_" + std::to_string(i) +
                " below 1/min positive cylinder probability at depth " + std::to_string(i));
        if (block_repeats[static_cast<std::size_t>(i - 1)] == 0)
            throw std::invalid_argument("MuChampernowneSchedule: zero block repeat");
    }
}

SymbolSequence gen_champernowne(int base) {
    if (base < 2) throw std::invalid_argument("gen_champernowne: base must be >= 2");
    return SymbolSequence(base, std::make_shared<ChampernowneSource>(base));
}

SymbolSequence gen_constant(int base, std::uint8_t digit) {
    if (digit >= base) throw std::invalid_argument("gen_constant: digit out of range");
    return SymbolSequence(base, std::make_shared<ConstantSource>(digit));
}

SymbolSequence gen_periodic(int base, std::vector<std::uint8_t> period) {
    if (period.empty()) throw std::invalid_argument("gen_periodic: empty period");
    for (std::uint8_t d : period)
        if (d >= base) throw std::invalid_argument("gen_periodic: digit out of range");
    return SymbolSequence(base, std::make_shared<PeriodicSource>(std::move(period)));
}

SymbolSequence gen_diluted(const SymbolSequence& y, const DilutionPattern& pattern) {
    pattern.validate(y.base());
    return SymbolSequence(y.base(), std::make_shared<DilutedSource>(y, pattern));
}

SymbolSequence gen_alternating(const DilutionPattern& pat_odd, const DilutionPattern& pat_even,
                               const SymbolSequence& y, const StageSchedule& schedule) {
    pat_odd.validate(y.base());
    pat_even.validate(y.base());
    schedule.validate();
    return SymbolSequence(y.base(),
                          std::make_shared<AlternatingSource>(pat_odd, pat_even, y, schedule));
}

SymbolSequence gen_mu_champernowne(const AnalyticMeasure& mu,
                                   const MuChampernowneSchedule& schedule) {
    schedule.validate(mu);
    int check_depth = std::min(schedule.stages() + 1, 6);
    if (auto defect = mu.shift_invariance_defect(check_depth, 1e-9)) {
        throw std::invalid_argument("gen_mu_champernowne: measure not shift-invariant at cylinder " +
                                    *defect);
    }
    return SymbolSequence(mu.base(), std::make_shared<MuChampernowneSource>(mu, schedule));
}

}  // namespace fsdim
