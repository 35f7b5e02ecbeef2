#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fsdim/analytic_measure.hpp"
#include "fsdim/cylinder_measure.hpp"
#include "fsdim/sequence.hpp"

namespace fsdim {

/// Checkpointed partial Weyl averages S_n(k) = (1/n) sum_j e^{2 pi i k v(T^j x)}
/// for one frequency, phases truncated at a fixed digit depth.
struct WeylSeries {
    long long k = 0;
    int depth = 64;
    std::vector<std::uint64_t> checkpoints;
    std::vector<std::complex<double>> values;
    std::vector<double> error_bounds;  // 2 pi |k| b^-depth per point
};

/// S_n(k) with the evaluation map truncated at `depth` digits. The reported
/// error bound covers the truncation: |S_n(k) - returned| <= 2 pi |k| b^-depth.
std::complex<double> weyl_partial_average(const SymbolSequence& x, long long k, std::uint64_t n,
                                          int depth, double* error_bound = nullptr);

/// One-pass incremental evaluation over increasing checkpoints; the value at
/// checkpoint n is bit-identical to weyl_partial_average(x, k, n, depth).
/// Frequencies are processed independently (parallel across k when
/// threads > 1); results do not depend on the thread count.
std::vector<WeylSeries> weyl_series(const SymbolSequence& x, std::span<const long long> ks,
                                    std::span<const std::uint64_t> checkpoints, int depth,
                                    int threads = 1);

/// Fourier coefficient of a finitely represented measure:
/// sum_w mu(C_w) e^{2 pi i k v(w 0^inf)} over depth-L cylinders,
/// error bound 2 pi |k| b^-L.
std::complex<double> measure_fourier(const CylinderMeasure& mu, long long k,
                                     double* error_bound = nullptr);

/// Same coefficient for a closed-form measure, enumerated at the given depth
/// in the measure's native base.
std::complex<double> measure_fourier(const AnalyticMeasure& mu, long long k, int depth,
                                     double* error_bound = nullptr);

enum class Verdict { converged, oscillating, inconclusive };

std::string to_string(Verdict v);

/// Convergence verdict for one subsequence schedule: `converged` when all
/// pairwise gaps over the tail (the later half of the schedule) stay within
/// tol, `oscillating` when some tail pair differs by more than 2 tol.
struct ScheduleReport {
    std::string name;
    std::vector<std::size_t> indices;  // positions into the sampled series
    Verdict verdict = Verdict::inconclusive;
    std::complex<double> candidate_limit{0.0, 0.0};  // tail mean when converged
    double tail_gap = 0.0;                           // max pairwise gap over the tail
    std::optional<std::pair<std::size_t, std::size_t>> witness;  // indices with gap > 2 tol
};

struct LimitReport {
    double tolerance = 0.0;
    std::vector<ScheduleReport> schedules;
};

using Schedule = std::pair<std::string, std::vector<std::size_t>>;

/// Subsequence-limit verdicts for a sampled series (Weyl averages, cylinder
/// probabilities, entropies, ...). Schedules index into `values`; schedules
/// shorter than 3 points are inconclusive.
LimitReport limit_report(std::span<const std::complex<double>> values,
                         const std::vector<Schedule>& schedules, double tol);
LimitReport limit_report(std::span<const double> values, const std::vector<Schedule>& schedules,
                         double tol);

}  // namespace fsdim
