#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsdim/cylinder_measure.hpp"
#include "fsdim/sequence.hpp"

namespace fsdim {

/// Exact nonnegative rational in [0, 1], den > 0. Interval endpoints on the
/// torus (j / m^L and friends) stay well inside int64 at the depths this
/// library enumerates.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational zero() { return {0, 1}; }
    static Rational one() { return {1, 1}; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Closed-form probability measure with exact cylinder probabilities at any
/// queried depth. `base` is the digit alphabet of its native cylinder
/// representation; a pushforward by factor m is represented in base m.
class AnalyticMeasure {
public:
    enum class Kind { bernoulli, markov, point_mass, interval_lift, pushforward };

    static AnalyticMeasure bernoulli(std::vector<double> p);
    static AnalyticMeasure markov(std::vector<double> pi, std::vector<std::vector<double>> P);
    static AnalyticMeasure point_mass(SymbolSequence digits);

    /// Measure on the torus given by its base-b interval masses per depth:
    /// masses[d-1][j] is the mass of [j/b^d, (j+1)/b^d). Masses must be
    /// additively consistent across depths.
    static AnalyticMeasure interval_lift(int base, std::vector<std::vector<double>> masses);

    /// Image measure under r -> m*r mod 1, evaluated lazily through the
    /// sum-over-preimage rule. Its native base is m.
    static AnalyticMeasure pushforward(AnalyticMeasure inner, int m);

    Kind kind() const noexcept { return kind_; }
    int base() const noexcept { return base_; }

    /// mu(C_w) for w over the native alphabet, exact closed form.
    double cylinder_prob(std::span<const std::uint8_t> w) const;
    double cylinder_prob(const std::string& w) const;

    /// mu([0, t)) for exact rational t in [0, 1].
    double cdf(Rational t) const;

    /// mu([a, b)) for rationals 0 <= a <= b <= 1.
    double interval_mass(Rational a, Rational b) const { return cdf(b) - cdf(a); }

    /// Checks mu(C_w) = sum_d mu(C_dw) for all |w| < max_depth. Returns the
    /// first violating cylinder, or nullopt when invariant within tol.
    std::optional<std::string> shift_invariance_defect(int max_depth, double tol) const;

    /// Smallest positive cylinder probability at the given depth.
    double min_positive_cylinder_prob(int depth) const;

    /// Depth down to which cylinder probabilities are exact: the table depth
    /// for interval lifts, unbounded (INT_MAX) for closed-form kinds.
    int exact_depth() const;

    const AnalyticMeasure& inner() const;
    int pushforward_factor() const;
    const std::vector<double>& bernoulli_probs() const;
    const std::vector<double>& markov_initial() const;
    const std::vector<std::vector<double>>& markov_matrix() const;

private:
    AnalyticMeasure() = default;

    Kind kind_ = Kind::bernoulli;
    int base_ = 2;
    std::vector<double> p_;                      // bernoulli
    std::vector<double> pi_;                     // markov initial
    std::vector<std::vector<double>> P_;         // markov transitions
    std::shared_ptr<SymbolSequence> point_;      // point mass
    std::vector<std::vector<double>> masses_;    // interval lift, per depth
    std::shared_ptr<AnalyticMeasure> inner_;     // pushforward
    int factor_ = 1;                             // pushforward
};

/// Integer pushforward (f_m)_* mu. m = 1 returns the measure unchanged.
AnalyticMeasure pushforward_integer(const AnalyticMeasure& mu, int m);

/// Lift of a torus measure to sequence space: cylinder probabilities equal
/// the corresponding interval masses down to depth L.
CylinderMeasure lift(const AnalyticMeasure& mu, int depth);

/// Same, from explicit per-depth interval masses (masses[d-1][j] is the mass
/// of [j/b^d, (j+1)/b^d)). Rejects additively inconsistent input.
CylinderMeasure lift(int base, const std::vector<std::vector<double>>& masses, int depth);

}  // namespace fsdim
