#include "fsdim/analytic_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fsdim {

namespace {

constexpr int kCdfMaxSteps = 512;
constexpr double kMassFloor = 1e-30;

void check_probability_vector(const std::vector<double>& p, const char* what) {
    if (p.size() < 2) throw std::invalid_argument(std::string(what) + ": need >= 2 entries");
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + ": entry out of [0,1]");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + ": entries sum to " + std::to_string(sum));
}

std::uint64_t checked_cells(int base, int depth) {
    std::uint64_t cells = 1;
    for (int i = 0; i < depth; ++i) {
        cells *= static_cast<std::uint64_t>(base);
        if (cells > (std::uint64_t{1} << 26))
            throw std::invalid_argument("cylinder enumeration too large (base^depth > 2^26)");
    }
    return cells;
}

// Digit expansion of an exact rational in [0,1]: repeatedly multiply by the
// base. num == 0 marks a terminated expansion.
struct DigitWalk {
    std::int64_t num;
    std::int64_t den;
    int base;

    int next() {
        if (num == 0) return 0;
        if (num > std::numeric_limits<std::int64_t>::max() / base)
            throw std::overflow_error("rational digit walk overflow");
        num *= base;
        std::int64_t d = num / den;
        num -= d * den;
        return static_cast<int>(d);
    }
};

}  // namespace

AnalyticMeasure AnalyticMeasure::bernoulli(std::vector<double> p) {
    check_probability_vector(p, "bernoulli");
    AnalyticMeasure m;
    m.kind_ = Kind::bernoulli;
    m.base_ = static_cast<int>(p.size());
    m.p_ = std::move(p);
    return m;
}

AnalyticMeasure AnalyticMeasure::markov(std::vector<double> pi,
                                        std::vector<std::vector<double>> P) {
    check_probability_vector(pi, "markov initial");
    if (P.size() != pi.size()) throw std::invalid_argument("markov: matrix/initial size mismatch");
    for (const auto& row : P) {
        if (row.size() != pi.size()) throw std::invalid_argument("markov: matrix not square");
        check_probability_vector(row, "markov row");
    }
    AnalyticMeasure m;
    m.kind_ = Kind::markov;
    m.base_ = static_cast<int>(pi.size());
    m.pi_ = std::move(pi);
    m.P_ = std::move(P);
    return m;
}

AnalyticMeasure AnalyticMeasure::point_mass(SymbolSequence digits) {
    AnalyticMeasure m;
    m.kind_ = Kind::point_mass;
    m.base_ = digits.base();
    m.point_ = std::make_shared<SymbolSequence>(std::move(digits));
    return m;
}

AnalyticMeasure AnalyticMeasure::interval_lift(int base, std::vector<std::vector<double>> masses) {
    if (base < 2) throw std::invalid_argument("interval_lift: base must be >= 2");
    if (masses.empty()) throw std::invalid_argument("interval_lift: no mass tables");
    std::size_t cells = static_cast<std::size_t>(base);
    for (std::size_t d = 0; d < masses.size(); ++d, cells *= static_cast<std::size_t>(base)) {
        if (masses[d].size() != cells)
            throw std::invalid_argument("interval_lift: depth " + std::to_string(d + 1) +
                                        " table has wrong size");
        for (double v : masses[d])
            if (!(v >= 0.0)) throw std::invalid_argument("interval_lift: negative mass");
    }
    double total = 0.0;
    for (double v : masses[0]) total += v;
    if (std::abs(total - 1.0) > 1e-10)
        throw std::invalid_argument("interval_lift: depth-1 masses sum to " + std::to_string(total));
    for (std::size_t d = 0; d + 1 < masses.size(); ++d) {
        for (std::size_t j = 0; j < masses[d].size(); ++j) {
            double sum = 0.0;
            for (int a = 0; a < base; ++a)
                sum += masses[d + 1][j * static_cast<std::size_t>(base) + static_cast<std::size_t>(a)];
            if (std::abs(sum - masses[d][j]) > 1e-10)
                throw std::invalid_argument("interval_lift: inconsistent masses under cell " +
                                            std::to_string(j) + " at depth " + std::to_string(d + 1));
        }
    }
    AnalyticMeasure m;
    m.kind_ = Kind::interval_lift;
    m.base_ = base;
    m.masses_ = std::move(masses);
    return m;
}

AnalyticMeasure AnalyticMeasure::pushforward(AnalyticMeasure inner, int m) {
    if (m < 1) throw std::invalid_argument("pushforward: factor must be >= 1");
    AnalyticMeasure out;
    out.kind_ = Kind::pushforward;
    out.base_ = m;
    out.inner_ = std::make_shared<AnalyticMeasure>(std::move(inner));
    out.factor_ = m;
    return out;
}

const AnalyticMeasure& AnalyticMeasure::inner() const {
    if (!inner_) throw std::logic_error("inner(): not a pushforward measure");
    return *inner_;
}

int AnalyticMeasure::pushforward_factor() const {
    if (kind_ != Kind::pushforward) throw std::logic_error("pushforward_factor(): wrong kind");
    return factor_;
}

const std::vector<double>& AnalyticMeasure::bernoulli_probs() const {
    if (kind_ != Kind::bernoulli) throw std::logic_error("bernoulli_probs(): wrong kind");
    return p_;
}

const std::vector<double>& AnalyticMeasure::markov_initial() const {
    if (kind_ != Kind::markov) throw std::logic_error("markov_initial(): wrong kind");
    return pi_;
}

const std::vector<std::vector<double>>& AnalyticMeasure::markov_matrix() const {
    if (kind_ != Kind::markov) throw std::logic_error("markov_matrix(): wrong kind");
    return P_;
}

double AnalyticMeasure::cylinder_prob(std::span<const std::uint8_t> w) const {
    for (std::uint8_t d : w)
        if (d >= base_) throw std::invalid_argument("cylinder_prob: digit out of range");
    switch (kind_) {
        case Kind::bernoulli: {
            double prob = 1.0;
            for (std::uint8_t d : w) prob *= p_[d];
            return prob;
        }
        case Kind::markov: {
            if (w.empty()) return 1.0;
            double prob = pi_[w[0]];
            for (std::size_t i = 1; i < w.size(); ++i) prob *= P_[w[i - 1]][w[i]];
            return prob;
        }
        case Kind::point_mass: {
            std::size_t got = point_->ensure(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) {
                std::uint8_t z = i < got ? point_->at(i) : 0;  // exhausted tail reads as 0s
                if (z != w[i]) return 0.0;
            }
            return 1.0;
        }
        case Kind::interval_lift: {
            if (w.empty()) return 1.0;
            if (w.size() > masses_.size())
                throw std::invalid_argument("cylinder_prob: deeper than interval tables");
            std::size_t idx = 0;
            for (std::uint8_t d : w) idx = idx * static_cast<std::size_t>(base_) + d;
            return masses_[w.size() - 1][idx];
        }
        case Kind::pushforward: {
            // (f_m)* mu(I^m_w) = sum_i mu(I^m_{iw})
            std::int64_t idx = 0;
            std::int64_t den = 1;
            for (std::uint8_t d : w) {
                idx = idx * base_ + d;
                den *= base_;
            }
            if (den > std::numeric_limits<std::int64_t>::max() / (base_ * 2))
                throw std::overflow_error("pushforward cylinder too deep for exact endpoints");
            double sum = 0.0;
            for (int i = 0; i < factor_; ++i) {
                std::int64_t lo = i * den + idx;
                sum += inner_->interval_mass({lo, den * base_}, {lo + 1, den * base_});
            }
            return sum;
        }
    }
    return 0.0;
}

double AnalyticMeasure::cylinder_prob(const std::string& w) const {
    std::vector<std::uint8_t> digits;
    digits.reserve(w.size());
    for (char c : w) digits.push_back(static_cast<std::uint8_t>(c - '0'));
    return cylinder_prob(digits);
}

double AnalyticMeasure::cdf(Rational t) const {
    if (t.den <= 0 || t.num < 0 || t.num > t.den) throw std::invalid_argument("cdf: t outside [0,1]");
    if (t.num == 0) return 0.0;
    if (t.num == t.den) return 1.0;
    switch (kind_) {
        case Kind::bernoulli: {
            DigitWalk walk{t.num, t.den, base_};
            double F = 0.0, mass = 1.0;
            for (int step = 0; step < kCdfMaxSteps && walk.num != 0 && mass > kMassFloor; ++step) {
                int d = walk.next();
                for (int a = 0; a < d; ++a) F += mass * p_[static_cast<std::size_t>(a)];
                mass *= p_[static_cast<std::size_t>(d)];
            }
            return F;
        }
        case Kind::markov: {
            DigitWalk walk{t.num, t.den, base_};
            double F = 0.0, mass = 1.0;
            int state = -1;
            for (int step = 0; step < kCdfMaxSteps && walk.num != 0 && mass > kMassFloor; ++step) {
                int d = walk.next();
                for (int a = 0; a < d; ++a)
                    F += mass * (state < 0 ? pi_[static_cast<std::size_t>(a)]
                                           : P_[static_cast<std::size_t>(state)][static_cast<std::size_t>(a)]);
                mass *= (state < 0 ? pi_[static_cast<std::size_t>(d)]
                                   : P_[static_cast<std::size_t>(state)][static_cast<std::size_t>(d)]);
                state = d;
            }
            return F;
        }
        case Kind::point_mass: {
            // F(t) = [v(z) < t]; digit comparison with a horizon, treating a
            // trailing run of (b-1)s against a terminated expansion as equal.
            DigitWalk walk{t.num, t.den, base_};
            std::size_t have = point_->ensure(kCdfMaxSteps);
            for (int i = 0; i < kCdfMaxSteps; ++i) {
                int d = walk.next();
                int z = i < static_cast<int>(have) ? point_->at(static_cast<std::size_t>(i)) : 0;
                if (z > d) return 0.0;
                if (z < d) {
                    if (z != d - 1 || walk.num != 0) return 1.0;
                    for (int j = i + 1; j < kCdfMaxSteps; ++j) {
                        int zj = j < static_cast<int>(have) ? point_->at(static_cast<std::size_t>(j)) : 0;
                        if (zj != base_ - 1) return 1.0;
                    }
                    return 0.0;  // z = w(d-1)(b-1)^inf evaluates to exactly t
                }
            }
            return 0.0;  // equal to horizon depth
        }
        case Kind::interval_lift: {
            DigitWalk walk{t.num, t.den, base_};
            double F = 0.0;
            std::size_t idx = 0;
            for (std::size_t depth = 0; depth < masses_.size(); ++depth) {
                int d = walk.next();
                for (int a = 0; a < d; ++a) F += masses_[depth][idx * static_cast<std::size_t>(base_) +
                                                              static_cast<std::size_t>(a)];
                idx = idx * static_cast<std::size_t>(base_) + static_cast<std::size_t>(d);
                if (walk.num == 0) break;
            }
            // Endpoints deeper than the tables truncate at the last cell.
            return F;
        }
        case Kind::pushforward: {
            if (t.den > std::numeric_limits<std::int64_t>::max() / factor_)
                throw std::overflow_error("pushforward cdf endpoint overflow");
            double F = 0.0;
            for (int i = 0; i < factor_; ++i) {
                Rational lo{i * t.den, static_cast<std::int64_t>(factor_) * t.den};
                Rational hi{i * t.den + t.num, static_cast<std::int64_t>(factor_) * t.den};
                F += inner_->interval_mass(lo, hi);
            }
            return F;
        }
    }
    return 0.0;
}

std::optional<std::string> AnalyticMeasure::shift_invariance_defect(int max_depth,
                                                                    double tol) const {
    std::vector<std::uint8_t> w;
    for (int depth = 0; depth < max_depth; ++depth) {
        std::uint64_t cells = checked_cells(base_, depth);
        w.assign(static_cast<std::size_t>(depth), 0);
        for (std::uint64_t idx = 0; idx < cells; ++idx) {
            std::uint64_t rest = idx;
            for (int i = depth - 1; i >= 0; --i) {
                w[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rest % base_);
                rest /= static_cast<std::uint64_t>(base_);
            }
            double direct = cylinder_prob(w);
            double extended = 0.0;
            std::vector<std::uint8_t> dw(w.size() + 1);
            std::copy(w.begin(), w.end(), dw.begin() + 1);
            for (int d = 0; d < base_; ++d) {
                dw[0] = static_cast<std::uint8_t>(d);
                extended += cylinder_prob(dw);
            }
            if (std::abs(direct - extended) > tol) {
                std::string cyl;
                for (std::uint8_t c : w) cyl += static_cast<char>('0' + c);
                return cyl.empty() ? std::string("(empty)") : cyl;
            }
        }
    }
    return std::nullopt;
}

double AnalyticMeasure::min_positive_cylinder_prob(int depth) const {
    if (depth < 1) throw std::invalid_argument("min_positive_cylinder_prob: depth >= 1");
    if (kind_ == Kind::bernoulli) {
        double pmin = 1.0;
        for (double v : p_)
            if (v > 0.0) pmin = std::min(pmin, v);
        return std::pow(pmin, depth);
    }
    if (kind_ == Kind::point_mass) return 1.0;
    std::uint64_t cells = checked_cells(base_, depth);
    double best = 1.0;
    std::vector<std::uint8_t> w(static_cast<std::size_t>(depth));
    for (std::uint64_t idx = 0; idx < cells; ++idx) {
        std::uint64_t rest = idx;
        for (int i = depth - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rest % base_);
            rest /= static_cast<std::uint64_t>(base_);
        }
        double p = cylinder_prob(w);
        if (p > 0.0) best = std::min(best, p);
    }
    return best;
}

int AnalyticMeasure::exact_depth() const {
    switch (kind_) {
        case Kind::interval_lift:
            return static_cast<int>(masses_.size());
        case Kind::pushforward:
            return inner_->exact_depth() == std::numeric_limits<int>::max()
                       ? std::numeric_limits<int>::max()
                       : inner_->exact_depth() - 1;
        default:
            return std::numeric_limits<int>::max();
    }
}

AnalyticMeasure pushforward_integer(const AnalyticMeasure& mu, int m) {
    if (m < 1) throw std::invalid_argument("pushforward_integer: m must be >= 1");
    if (m == 1) return mu;
    return AnalyticMeasure::pushforward(mu, m);
}

CylinderMeasure lift(const AnalyticMeasure& mu, int depth) {
    if (depth > mu.exact_depth())
        throw std::invalid_argument("lift: depth beyond the measure's exact resolution");
    std::uint64_t cells = checked_cells(mu.base(), depth);
    std::vector<double> leaves(cells);
    const std::int64_t den = static_cast<std::int64_t>(cells);
    double prev = 0.0;
    for (std::uint64_t idx = 0; idx < cells; ++idx) {
        double next =
            (idx + 1 == cells) ? 1.0 : mu.cdf({static_cast<std::int64_t>(idx) + 1, den});
        leaves[idx] = std::max(0.0, next - prev);
        prev = next;
    }
    return CylinderMeasure(mu.base(), depth, std::move(leaves));
}

CylinderMeasure lift(int base, const std::vector<std::vector<double>>& masses, int depth) {
    // Validation of additive consistency happens inside interval_lift.
    AnalyticMeasure mu = AnalyticMeasure::interval_lift(base, masses);
    if (static_cast<std::size_t>(depth) > masses.size())
        throw std::invalid_argument("lift: depth deeper than provided mass tables");
    return CylinderMeasure(base, depth, masses[static_cast<std::size_t>(depth) - 1]);
}

}  // namespace fsdim
