#include "fsdim/cylinder_measure.hpp"

#include <cmath>
#include <stdexcept>

namespace fsdim {

namespace {

std::uint64_t cells_at(int base, int depth) {
    std::uint64_t cells = 1;
    for (int i = 0; i < depth; ++i) {
        cells *= static_cast<std::uint64_t>(base);
        if (cells > (std::uint64_t{1} << 26))
            throw std::invalid_argument("cylinder depth too large (base^depth > 2^26)");
    }
    return cells;
}

}  // namespace

CylinderMeasure::CylinderMeasure(int base, int depth, std::vector<double> leaf_probs)
    : base_(base), depth_(depth) {
    if (base < 2 || depth < 1) throw std::invalid_argument("CylinderMeasure: bad base/depth");
    if (leaf_probs.size() != cells_at(base, depth))
        throw std::invalid_argument("CylinderMeasure: leaf table size mismatch");
    for (double p : leaf_probs)
        if (!(p >= 0.0)) throw std::invalid_argument("CylinderMeasure: negative probability");
    build_levels(std::move(leaf_probs));
    double mass = 0.0;
    for (double p : levels_.front()) mass += p;
    if (std::abs(mass - 1.0) > 1e-9)
        throw std::invalid_argument("CylinderMeasure: total mass " + std::to_string(mass));
}

CylinderMeasure CylinderMeasure::from_counts(int base, int depth,
                                             std::vector<std::uint64_t> leaf_counts,
                                             std::uint64_t sample_count) {
    if (sample_count == 0) throw std::invalid_argument("CylinderMeasure: zero samples");
    std::vector<double> probs(leaf_counts.size());
    for (std::size_t i = 0; i < leaf_counts.size(); ++i)
        probs[i] = static_cast<double>(leaf_counts[i]) / static_cast<double>(sample_count);
    CylinderMeasure m(base, depth, std::move(probs));
    m.samples_ = sample_count;
    m.counts_.resize(static_cast<std::size_t>(depth));
    m.counts_[static_cast<std::size_t>(depth - 1)] = std::move(leaf_counts);
    for (int d = depth - 1; d >= 1; --d) {
        const auto& fine = m.counts_[static_cast<std::size_t>(d)];
        auto& coarse = m.counts_[static_cast<std::size_t>(d - 1)];
        coarse.assign(fine.size() / static_cast<std::size_t>(base), 0);
        for (std::size_t i = 0; i < fine.size(); ++i)
            coarse[i / static_cast<std::size_t>(base)] += fine[i];
    }
    return m;
}

void CylinderMeasure::build_levels(std::vector<double> leaves) {
    levels_.resize(static_cast<std::size_t>(depth_));
    levels_[static_cast<std::size_t>(depth_ - 1)] = std::move(leaves);
    for (int d = depth_ - 1; d >= 1; --d) {
        const auto& fine = levels_[static_cast<std::size_t>(d)];
        auto& coarse = levels_[static_cast<std::size_t>(d - 1)];
        coarse.assign(fine.size() / static_cast<std::size_t>(base_), 0.0);
        for (std::size_t i = 0; i < fine.size(); ++i)
            coarse[i / static_cast<std::size_t>(base_)] += fine[i];
    }
}

double CylinderMeasure::prob(std::span<const std::uint8_t> w) const {
    if (w.empty()) return 1.0;
    if (static_cast<int>(w.size()) > depth_)
        throw std::invalid_argument("CylinderMeasure: word deeper than representation");
    std::uint64_t idx = 0;
    for (std::uint8_t d : w) {
        if (d >= base_) throw std::invalid_argument("CylinderMeasure: digit out of range");
        idx = idx * static_cast<std::uint64_t>(base_) + d;
    }
    return prob_index(static_cast<int>(w.size()), idx);
}

double CylinderMeasure::prob(const std::string& w) const {
    std::vector<std::uint8_t> digits;
    digits.reserve(w.size());
    for (char c : w) digits.push_back(static_cast<std::uint8_t>(c - '0'));
    return prob(digits);
}

double CylinderMeasure::prob_index(int len, std::uint64_t idx) const {
    if (len == 0) return 1.0;
    return levels_[static_cast<std::size_t>(len - 1)][idx];
}

std::uint64_t CylinderMeasure::count_index(int len, std::uint64_t idx) const {
    if (counts_.empty()) throw std::logic_error("CylinderMeasure: not count-backed");
    return counts_[static_cast<std::size_t>(len - 1)][idx];
}

double CylinderMeasure::consistency_defect() const {
    double worst = 0.0;
    for (int d = 1; d < depth_; ++d) {
        const auto& coarse = levels_[static_cast<std::size_t>(d - 1)];
        const auto& fine = levels_[static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < coarse.size(); ++i) {
            double sum = 0.0;
            for (int a = 0; a < base_; ++a)
                sum += fine[i * static_cast<std::size_t>(base_) + static_cast<std::size_t>(a)];
            worst = std::max(worst, std::abs(sum - coarse[i]));
        }
    }
    return worst;
}

CylinderMeasure empirical_measure(const SymbolSequence& x, std::uint64_t n, int depth) {
    if (n == 0 || depth < 1) throw std::invalid_argument("empirical_measure: need n >= 1, depth >= 1");
    // counts of depth-L blocks with starts in [0, n), so nu_n(C_w) is the
    // sliding frequency of w over the first n shifts
    std::span<const std::uint8_t> digits =
        x.prefix(static_cast<std::size_t>(n) + static_cast<std::size_t>(depth) - 1);
    std::vector<std::uint64_t> counts(cells_at(x.base(), depth), 0);
    const std::uint64_t b = static_cast<std::uint64_t>(x.base());
    std::uint64_t modulus = 1;
    for (int i = 0; i < depth - 1; ++i) modulus *= b;
    std::uint64_t packed = 0;
    for (int i = 0; i < depth; ++i) packed = packed * b + digits[static_cast<std::size_t>(i)];
    ++counts[packed];
    for (std::uint64_t start = 1; start < n; ++start) {
        packed = (packed % modulus) * b +
                 digits[static_cast<std::size_t>(start) + static_cast<std::size_t>(depth) - 1];
        ++counts[packed];
    }
    return CylinderMeasure::from_counts(x.base(), depth, std::move(counts), n);
}

}  // namespace fsdim
