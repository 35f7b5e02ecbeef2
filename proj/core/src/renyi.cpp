#include "fsdim/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fsdim {

namespace {

constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 24;

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

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

// -sum over native depth-n cylinders of p log p, by DFS with incremental
// probabilities (bernoulli/markov) or a CDF endpoint scan otherwise.
double native_entropy_enumerated(const AnalyticMeasure& mu, int depth) {
    const int b = mu.base();
    KahanSum acc;
    if (mu.kind() == AnalyticMeasure::Kind::bernoulli ||
        mu.kind() == AnalyticMeasure::Kind::markov) {
        const bool markov = mu.kind() == AnalyticMeasure::Kind::markov;
        const std::vector<double>* p = markov ? &mu.markov_initial() : &mu.bernoulli_probs();
        // Depth-first over words, probability threaded along the path.
        std::vector<int> word(static_cast<std::size_t>(depth), 0);
        std::vector<double> prob(static_cast<std::size_t>(depth) + 1, 1.0);
        for (;;) {
            for (int d = 0; d < depth; ++d) {
                double step;
                if (!markov) {
                    step = (*p)[static_cast<std::size_t>(word[static_cast<std::size_t>(d)])];
                } else if (d == 0) {
                    step = mu.markov_initial()[static_cast<std::size_t>(word[0])];
                } else {
                    step = mu.markov_matrix()[static_cast<std::size_t>(word[static_cast<std::size_t>(d - 1)])]
                                             [static_cast<std::size_t>(word[static_cast<std::size_t>(d)])];
                }
                prob[static_cast<std::size_t>(d) + 1] = prob[static_cast<std::size_t>(d)] * step;
            }
            acc.add(-plogp(prob[static_cast<std::size_t>(depth)]));
            int d = depth - 1;
            while (d >= 0 && word[static_cast<std::size_t>(d)] == b - 1) {
                word[static_cast<std::size_t>(d)] = 0;
                --d;
            }
            if (d < 0) break;
            ++word[static_cast<std::size_t>(d)];
        }
        return acc.sum;
    }
    std::uint64_t cells = 1;
    for (int i = 0; i < depth; ++i) cells *= static_cast<std::uint64_t>(b);
    const std::int64_t den = static_cast<std::int64_t>(cells);
    double prev = 0.0;
    for (std::uint64_t idx = 0; idx < cells; ++idx) {
        double next = (idx + 1 == cells) ? 1.0 : mu.cdf({static_cast<std::int64_t>(idx) + 1, den});
        acc.add(-plogp(std::max(0.0, next - prev)));
        prev = next;
    }
    return acc.sum;
}

// Cross-base partition entropy via the exact-rational CDF at consecutive
// base-m endpoints.
double cross_entropy_enumerated(const AnalyticMeasure& mu, int m, int depth) {
    std::uint64_t cells = 1;
    for (int i = 0; i < depth; ++i) cells *= static_cast<std::uint64_t>(m);
    const std::int64_t den = static_cast<std::int64_t>(cells);
    KahanSum acc;
    double prev = 0.0;
    for (std::uint64_t idx = 0; idx < cells; ++idx) {
        double next = (idx + 1 == cells) ? 1.0 : mu.cdf({static_cast<std::int64_t>(idx) + 1, den});
        acc.add(-plogp(std::max(0.0, next - prev)));
        prev = next;
    }
    return acc.sum;
}

// Closed forms where the measure factorizes; only reached past the
// enumeration cap.
double native_entropy_closed_form(const AnalyticMeasure& mu, int depth) {
    switch (mu.kind()) {
        case AnalyticMeasure::Kind::bernoulli: {
            double h = 0.0;
            for (double v : mu.bernoulli_probs()) h -= plogp(v);
            return depth * h;
        }
        case AnalyticMeasure::Kind::markov: {
            // Requires a stationary initial distribution.
            const auto& pi = mu.markov_initial();
            const auto& P = mu.markov_matrix();
            for (std::size_t j = 0; j < pi.size(); ++j) {
                double col = 0.0;
                for (std::size_t i = 0; i < pi.size(); ++i) col += pi[i] * P[i][j];
                if (std::abs(col - pi[j]) > 1e-9)
                    throw std::invalid_argument(
                        "partition_entropy: depth beyond enumeration cap needs a stationary chain");
            }
            double h0 = 0.0, hstep = 0.0;
            for (std::size_t i = 0; i < pi.size(); ++i) {
                h0 -= plogp(pi[i]);
                double row = 0.0;
                for (std::size_t j = 0; j < pi.size(); ++j) row -= plogp(P[i][j]);
                hstep += pi[i] * row;
            }
            return h0 + (depth - 1) * hstep;
        }
        case AnalyticMeasure::Kind::point_mass:
            return 0.0;
        default:
            throw std::invalid_argument("partition_entropy: depth too large for enumeration (base^depth > 2^24)");
    }
}

}  // namespace

double partition_entropy(const AnalyticMeasure& mu, int m, int depth) {
    if (m < 2) throw std::invalid_argument("partition_entropy: partition factor must be >= 2");
    if (depth < 1) throw std::invalid_argument("partition_entropy: depth must be >= 1");
    if (m == mu.base() && depth > mu.exact_depth())
        throw std::invalid_argument("partition_entropy: depth beyond the measure's exact resolution");
    long double cells = 1.0L;
    for (int i = 0; i < depth; ++i) cells *= m;
    if (cells > static_cast<long double>(kEnumerationCap)) {
        if (m == mu.base()) return native_entropy_closed_form(mu, depth);
        throw std::invalid_argument("partition_entropy: depth too large for cross-base enumeration");
    }
    if (m == mu.base()) return native_entropy_enumerated(mu, depth);
    return cross_entropy_enumerated(mu, m, depth);
}

double normalized_partition_entropy(const AnalyticMeasure& mu, int m, int depth) {
    return partition_entropy(mu, m, depth) /
           (static_cast<double>(depth) * std::log(static_cast<double>(m)));
}

RenyiProfile renyi_profile(const AnalyticMeasure& mu, int m, std::vector<int> depths,
                           double burn_in_fraction) {
    if (depths.empty()) throw std::invalid_argument("renyi_profile: no depths");
    std::sort(depths.begin(), depths.end());
    RenyiProfile prof;
    prof.partition_factor = m;
    prof.depths = depths;
    for (int n : depths) prof.values.push_back(normalized_partition_entropy(mu, m, n));
    const double cut = burn_in_fraction * static_cast<double>(depths.back());
    bool seen = false;
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (static_cast<double>(depths[i]) < cut && i + 1 != depths.size()) continue;
        prof.tail_lo = seen ? std::min(prof.tail_lo, prof.values[i]) : prof.values[i];
        prof.tail_hi = seen ? std::max(prof.tail_hi, prof.values[i]) : prof.values[i];
        seen = true;
    }
    return prof;
}

std::vector<double> average_entropy_profile(const AnalyticMeasure& mu,
                                            const std::vector<int>& depths) {
    std::vector<double> values;
    values.reserve(depths.size());
    for (int n : depths) values.push_back(normalized_partition_entropy(mu, mu.base(), n));
    return values;
}

InvarianceCheck check_partition_invariance(const AnalyticMeasure& mu, int m1, int m2, int l,
                                           double tol) {
    if (m1 < 2 || m2 < 2 || l < 1) throw std::invalid_argument("check_partition_invariance: bad args");
    // n with m1^n <= m2^l < m1^(n+1), exact in integers.
    long double target = 1.0L;
    for (int i = 0; i < l; ++i) target *= m2;
    int n = 0;
    long double pow1 = 1.0L;
    while (pow1 * m1 <= target) {
        pow1 *= m1;
        ++n;
    }
    if (n == 0) throw std::invalid_argument("check_partition_invariance: no matching depth (m2^l < m1)");
    InvarianceCheck chk;
    chk.matched_depth = n;
    double h2 = normalized_partition_entropy(mu, m2, l);
    double h1 = normalized_partition_entropy(mu, m1, n);
    chk.difference = std::abs(h2 - h1);
    chk.bound = 2.0 / static_cast<double>(n) + tol;
    chk.pass = chk.difference <= chk.bound;
    return chk;
}

}  // namespace fsdim
