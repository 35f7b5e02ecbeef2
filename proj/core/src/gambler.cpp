#include "fsdim/gambler.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fsdim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double bet_factor(const Gambler& g, int state, std::uint8_t digit) {
    double b = g.beta[static_cast<std::size_t>(state)];
    return digit ? b : 1.0 - b;
}

}  // namespace

void Gambler::validate() const {
    if (delta.empty()) throw std::invalid_argument("Gambler: no states");
    if (beta.size() != delta.size())
        throw std::invalid_argument("Gambler: beta/delta size mismatch");
    for (const auto& row : delta)
        for (int target : row)
            if (target < 0 || target >= states())
                throw std::invalid_argument("Gambler: transition out of range");
    for (double b : beta)
        if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("Gambler: beta outside [0,1]");
    if (start_state < 0 || start_state >= states())
        throw std::invalid_argument("Gambler: start state out of range");
    if (!(initial_capital >= 0.0)) throw std::invalid_argument("Gambler: negative capital");
}

SgaleTrace sgale_evaluate(const Gambler& g, double s, const SymbolSequence& x, std::size_t n) {
    g.validate();
    if (s < 0.0) throw std::invalid_argument("sgale_evaluate: s must be >= 0");
    if (x.base() != 2) throw std::invalid_argument("sgale_evaluate: binary alphabet required");
    std::span<const std::uint8_t> digits = x.prefix(n);

    SgaleTrace trace;
    trace.s = s;
    trace.log2_capital.reserve(n + 1);
    trace.state_path.reserve(n + 1);
    double log2_cap = g.initial_capital > 0.0 ? std::log2(g.initial_capital) : kNegInf;
    int state = g.start_state;
    trace.log2_capital.push_back(log2_cap);
    trace.state_path.push_back(state);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t digit = digits[i];
        double factor = bet_factor(g, state, digit);
        if (log2_cap == kNegInf || factor == 0.0) {
            log2_cap = kNegInf;  // ruin is absorbing
            trace.ruined = true;
        } else {
            log2_cap += s + std::log2(factor);
        }
        state = g.delta[static_cast<std::size_t>(state)][digit];
        trace.log2_capital.push_back(log2_cap);
        trace.state_path.push_back(state);
    }
    return trace;
}

double sgale_value(const Gambler& g, double s, std::span<const std::uint8_t> w) {
    g.validate();
    double cap = g.initial_capital;
    int state = g.start_state;
    const double mult = std::pow(2.0, s);
    for (std::uint8_t digit : w) {
        cap *= mult * bet_factor(g, state, digit);
        state = g.delta[static_cast<std::size_t>(state)][digit];
    }
    return cap;
}

SuccessReport success_report(const Gambler& g, double s, const SymbolSequence& x,
                             std::span<const std::size_t> checkpoints, double log2_threshold) {
    if (checkpoints.empty()) throw std::invalid_argument("success_report: no checkpoints");
    std::size_t n = checkpoints.back();
    SgaleTrace trace = sgale_evaluate(g, s, x, n);

    SuccessReport report;
    report.s = s;
    report.final_log2_capital = trace.log2_capital[n];

    const std::size_t tail_from = checkpoints.size() - (checkpoints.size() + 1) / 2;
    bool first = true;
    for (std::size_t i = tail_from; i < checkpoints.size(); ++i) {
        std::size_t cp = checkpoints[i];
        if (cp == 0) continue;
        double rate = trace.log2_capital[cp] / static_cast<double>(cp);
        report.tail_rate_min = first ? rate : std::min(report.tail_rate_min, rate);
        report.tail_rate_max = first ? rate : std::max(report.tail_rate_max, rate);
        first = false;
    }
    report.crossed_threshold = report.final_log2_capital >= log2_threshold;
    report.positive_trend = report.tail_rate_min > 0.0;
    if (trace.ruined && report.final_log2_capital == kNegInf)
        report.verdict = "ruined";
    else if (report.crossed_threshold && report.positive_trend)
        report.verdict = "succeeds (threshold)";
    else
        report.verdict = "no growth";
    return report;
}

}  // namespace fsdim
