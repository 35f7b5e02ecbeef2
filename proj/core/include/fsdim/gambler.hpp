#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fsdim/sequence.hpp"

namespace fsdim {

/// Finite-state gambler (Q, delta, beta, q0, c0) over the binary alphabet.
/// beta(q) is the fraction of capital wagered on the next digit being 1.
struct Gambler {
    std::vector<std::array<int, 2>> delta;  // delta[state][digit]
    std::vector<double> beta;               // in [0,1]
    int start_state = 0;
    double initial_capital = 1.0;

    int states() const noexcept { return static_cast<int>(delta.size()); }
    void validate() const;
};

/// Capital trace of the s-gale d_G^(s) along a prefix, kept in log2 domain
/// (capital reaches 2^(s n) scales quickly). Ruin is an explicit -infinity
/// and absorbing.
struct SgaleTrace {
    double s = 1.0;
    std::vector<double> log2_capital;  // [i] = log2 d(x_0^{i-1}); [0] = log2 c0
    std::vector<int> state_path;       // [i] = state after i digits
    bool ruined = false;
};

SgaleTrace sgale_evaluate(const Gambler& g, double s, const SymbolSequence& x, std::size_t n);

/// Linear-domain capital d_G^(s)(w) for short words (identity checks).
double sgale_value(const Gambler& g, double s, std::span<const std::uint8_t> w);

/// Tail growth-rate statistics of log2-capital. `succeeds` is a threshold
/// verdict, not a limit claim: a prefix cannot witness limsup = infinity.
struct SuccessReport {
    double s = 1.0;
    double tail_rate_min = 0.0;  // min over tail checkpoints of log2(d)/n
    double tail_rate_max = 0.0;
    double final_log2_capital = 0.0;
    bool crossed_threshold = false;
    bool positive_trend = false;
    std::string verdict;  // "succeeds (threshold)", "ruined", "no growth"
};

SuccessReport success_report(const Gambler& g, double s, const SymbolSequence& x,
                             std::span<const std::size_t> checkpoints,
                             double log2_threshold = 20.0);

}  // namespace fsdim
