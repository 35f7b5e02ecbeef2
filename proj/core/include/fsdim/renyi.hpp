#pragma once

#include <cstdint>
#include <vector>

#include "fsdim/analytic_measure.hpp"

namespace fsdim {

/// Per-depth normalized partition entropies H^m_n(mu) / (n log m) for one
/// partition factor, with tail statistics mirroring the sequence-side
/// dimension estimate.
struct RenyiProfile {
    int partition_factor = 2;
    std::vector<int> depths;
    std::vector<double> values;  // in [0,1]
    double tail_lo = 0.0;
    double tail_hi = 0.0;
};

/// Raw partition entropy H^m_n(mu) = -sum_w mu(I^m_w) log mu(I^m_w) in nats,
/// over the base-m depth-n interval partition. Enumerates m^n cells (via the
/// exact-rational CDF when m differs from the native base); beyond the
/// enumeration cap closed forms are used where available and the depth is
/// rejected otherwise.
double partition_entropy(const AnalyticMeasure& mu, int m, int depth);

/// partition_entropy normalized by depth * log m.
double normalized_partition_entropy(const AnalyticMeasure& mu, int m, int depth);

RenyiProfile renyi_profile(const AnalyticMeasure& mu, int m, std::vector<int> depths,
                           double burn_in_fraction = 0.5);

/// H_n(mu)/n over the native partition (upper/lower average entropy proxy).
std::vector<double> average_entropy_profile(const AnalyticMeasure& mu,
                                            const std::vector<int>& depths);

/// Partition-factor invariance check: for n with m1^n <= m2^l < m1^(n+1),
/// the normalized entropies differ by at most 2/n (+ tol for float slack).
struct InvarianceCheck {
    bool pass = false;
    int matched_depth = 0;  // n above
    double difference = 0.0;
    double bound = 0.0;
};

InvarianceCheck check_partition_invariance(const AnalyticMeasure& mu, int m1, int m2, int l,
                                           double tol);

}  // namespace fsdim
