#include "fsdim/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace fsdim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Truncated evaluation values v(T^j x) for j in [0, n), depth digits each.
std::vector<double> evaluation_values(std::span<const std::uint8_t> digits, int base,
                                      std::uint64_t n, int depth) {
    std::vector<double> v(static_cast<std::size_t>(n));
    const double b = static_cast<double>(base);
    for (std::uint64_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = depth - 1; i >= 0; --i)
            acc = (acc + digits[static_cast<std::size_t>(j) + static_cast<std::size_t>(i)]) / b;
        v[static_cast<std::size_t>(j)] = acc;
    }
    return v;
}

WeylSeries series_for_k(std::span<const double> values, int base, long long k,
                        std::span<const std::uint64_t> checkpoints, int depth) {
    WeylSeries s;
    s.k = k;
    s.depth = depth;
    s.checkpoints.assign(checkpoints.begin(), checkpoints.end());
    const double err = kTwoPi * std::abs(static_cast<double>(k)) * std::pow(base, -depth);
    KahanSum re, im;
    std::size_t next = 0;
    const double kd = static_cast<double>(k);
    for (std::uint64_t j = 0; j < checkpoints.back(); ++j) {
        double phase = kTwoPi * kd * values[static_cast<std::size_t>(j)];
        re.add(std::cos(phase));
        im.add(std::sin(phase));
        while (next < checkpoints.size() && j + 1 == checkpoints[next]) {
            double n = static_cast<double>(checkpoints[next]);
            s.values.emplace_back(re.sum / n, im.sum / n);
            s.error_bounds.push_back(err);
            ++next;
        }
    }
    return s;
}

}  // namespace

std::vector<WeylSeries> weyl_series(const SymbolSequence& x, std::span<const long long> ks,
                                    std::span<const std::uint64_t> checkpoints, int depth,
                                    int threads) {
    if (checkpoints.empty()) throw std::invalid_argument("weyl_series: no checkpoints");
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
        throw std::invalid_argument("weyl_series: checkpoints must be increasing");
    if (checkpoints.front() == 0) throw std::invalid_argument("weyl_series: checkpoint 0");
    if (depth < 1) throw std::invalid_argument("weyl_series: depth must be >= 1");

    const std::uint64_t n = checkpoints.back();
    std::span<const std::uint8_t> digits =
        x.prefix(static_cast<std::size_t>(n) + static_cast<std::size_t>(depth) - 1);
    std::vector<double> values = evaluation_values(digits, x.base(), n, depth);

    std::vector<WeylSeries> out(ks.size());
    if (threads <= 1 || ks.size() <= 1) {
        for (std::size_t i = 0; i < ks.size(); ++i)
            out[i] = series_for_k(values, x.base(), ks[i], checkpoints, depth);
        return out;
    }
    std::vector<std::thread> pool;
    std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(threads));
    for (std::size_t t = 0; t < stride; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < ks.size(); i += stride)
                out[i] = series_for_k(values, x.base(), ks[i], checkpoints, depth);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

std::complex<double> weyl_partial_average(const SymbolSequence& x, long long k, std::uint64_t n,
                                          int depth, double* error_bound) {
    std::uint64_t cp[1] = {n};
    long long kk[1] = {k};
    WeylSeries s = weyl_series(x, kk, cp, depth, 1)[0];
    if (error_bound) *error_bound = s.error_bounds[0];
    return s.values[0];
}

std::complex<double> measure_fourier(const CylinderMeasure& mu, long long k, double* error_bound) {
    const int L = mu.depth();
    const double bL = std::pow(static_cast<double>(mu.base()), L);
    const auto& leaves = mu.leaf_probs();
    KahanSum re, im;
    const double kd = static_cast<double>(k);
    for (std::size_t idx = 0; idx < leaves.size(); ++idx) {
        double p = leaves[idx];
        if (p == 0.0) continue;
        double phase = kTwoPi * kd * (static_cast<double>(idx) / bL);
        re.add(p * std::cos(phase));
        im.add(p * std::sin(phase));
    }
    if (error_bound) *error_bound = kTwoPi * std::abs(kd) / bL;
    return {re.sum, im.sum};
}

namespace {

// DFS over native-base cylinders with incremental probabilities.
struct FourierAccum {
    double k;
    int base;
    int depth;
    double cell_width;  // b^-depth
    KahanSum re, im;

    void leaf(std::uint64_t idx, double prob) {
        if (prob == 0.0) return;
        double phase = kTwoPi * k * (static_cast<double>(idx) * cell_width);
        re.add(prob * std::cos(phase));
        im.add(prob * std::sin(phase));
    }
};

void fourier_bernoulli(const AnalyticMeasure& mu, FourierAccum& acc) {
    const auto& p = mu.bernoulli_probs();
    const int b = mu.base();
    // Odometer walk; only prefix products from the changed digit onward are
    // recomputed, amortized O(1) per leaf.
    std::vector<int> word(static_cast<std::size_t>(acc.depth), 0);
    std::vector<double> prefix(static_cast<std::size_t>(acc.depth) + 1, 1.0);
    for (int d = 0; d < acc.depth; ++d)
        prefix[static_cast<std::size_t>(d) + 1] = prefix[static_cast<std::size_t>(d)] * p[0];
    std::uint64_t idx = 0;
    for (;;) {
        acc.leaf(idx, prefix[static_cast<std::size_t>(acc.depth)]);
        int d = acc.depth - 1;
        while (d >= 0 && word[static_cast<std::size_t>(d)] == b - 1) {
            word[static_cast<std::size_t>(d)] = 0;
            --d;
        }
        if (d < 0) break;
        ++word[static_cast<std::size_t>(d)];
        for (int i = d; i < acc.depth; ++i)
            prefix[static_cast<std::size_t>(i) + 1] =
                prefix[static_cast<std::size_t>(i)] *
                p[static_cast<std::size_t>(word[static_cast<std::size_t>(i)])];
        ++idx;
    }
}

}  // namespace

std::complex<double> measure_fourier(const AnalyticMeasure& mu, long long k, int depth,
                                     double* error_bound) {
    if (depth < 1) throw std::invalid_argument("measure_fourier: depth must be >= 1");
    if (depth > mu.exact_depth())
        throw std::invalid_argument("measure_fourier: depth beyond the measure's exact resolution");
    const int b = mu.base();
    const double bL = std::pow(static_cast<double>(b), depth);
    if (bL > static_cast<double>(std::uint64_t{1} << 26))
        throw std::invalid_argument("measure_fourier: depth too large for enumeration");
    if (error_bound) *error_bound = kTwoPi * std::abs(static_cast<double>(k)) / bL;

    if (mu.kind() == AnalyticMeasure::Kind::point_mass) {
        // Single atom: coefficient is the phase at the truncated value.
        std::vector<std::uint8_t> w;
        w.reserve(static_cast<std::size_t>(depth));
        double v = 0.0;
        double scale = 1.0;
        for (int i = 0; i < depth; ++i) {
            w.push_back(0);
            for (int d = 0; d < b; ++d) {
                w.back() = static_cast<std::uint8_t>(d);
                if (mu.cylinder_prob(w) > 0.5) break;
            }
            scale /= b;
            v += w.back() * scale;
        }
        double phase = kTwoPi * static_cast<double>(k) * v;
        return {std::cos(phase), std::sin(phase)};
    }

    FourierAccum acc;
    acc.k = static_cast<double>(k);
    acc.base = b;
    acc.depth = depth;
    acc.cell_width = 1.0 / bL;

    if (mu.kind() == AnalyticMeasure::Kind::bernoulli) {
        fourier_bernoulli(mu, acc);
        return {acc.re.sum, acc.im.sum};
    }

    // Generic route: consecutive-endpoint CDF scan. Exact for pushforwards,
    // markov chains and interval lifts at enumerable depths.
    const std::uint64_t cells = static_cast<std::uint64_t>(bL);
    const std::int64_t den = static_cast<std::int64_t>(cells);
    double prev = 0.0;
    for (std::uint64_t idx = 0; idx < cells; ++idx) {
        double next = (idx + 1 == cells) ? 1.0
                                         : mu.cdf({static_cast<std::int64_t>(idx) + 1, den});
        acc.leaf(idx, std::max(0.0, next - prev));
        prev = next;
    }
    return {acc.re.sum, acc.im.sum};
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::converged: return "converged";
        case Verdict::oscillating: return "oscillating";
        default: return "inconclusive";
    }
}

LimitReport limit_report(std::span<const std::complex<double>> values,
                         const std::vector<Schedule>& schedules, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("limit_report: tolerance must be positive");
    LimitReport report;
    report.tolerance = tol;
    for (const auto& [name, indices] : schedules) {
        ScheduleReport sr;
        sr.name = name;
        sr.indices = indices;
        for (std::size_t i : indices)
            if (i >= values.size())
                throw std::invalid_argument("limit_report: schedule index out of range");
        if (indices.size() < 3) {
            sr.verdict = Verdict::inconclusive;
            report.schedules.push_back(std::move(sr));
            continue;
        }
        const std::size_t tail_len = (indices.size() + 1) / 2;
        const std::size_t tail_from = indices.size() - tail_len;
        double max_gap = 0.0;
        std::pair<std::size_t, std::size_t> worst{0, 0};
        for (std::size_t a = tail_from; a < indices.size(); ++a) {
            for (std::size_t b = a + 1; b < indices.size(); ++b) {
                double gap = std::abs(values[indices[a]] - values[indices[b]]);
                if (gap > max_gap) {
                    max_gap = gap;
                    worst = {indices[a], indices[b]};
                }
            }
        }
        sr.tail_gap = max_gap;
        if (max_gap <= tol) {
            sr.verdict = Verdict::converged;
            std::complex<double> mean{0.0, 0.0};
            for (std::size_t a = tail_from; a < indices.size(); ++a) mean += values[indices[a]];
            sr.candidate_limit = mean / static_cast<double>(tail_len);
        } else if (max_gap > 2.0 * tol) {
            sr.verdict = Verdict::oscillating;
            sr.witness = worst;
        } else {
            sr.verdict = Verdict::inconclusive;
        }
        report.schedules.push_back(std::move(sr));
    }
    return report;
}

LimitReport limit_report(std::span<const double> values, const std::vector<Schedule>& schedules,
                         double tol) {
    std::vector<std::complex<double>> cx(values.begin(), values.end());
    return limit_report(std::span<const std::complex<double>>(cx), schedules, tol);
}

}  // namespace fsdim
