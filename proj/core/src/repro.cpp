#include "fsdim/repro.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fsdim/arithmetic.hpp"
#include "fsdim/block_distribution.hpp"
#include "fsdim/dimension.hpp"
#include "fsdim/gambler.hpp"
#include "fsdim/generators.hpp"
#include "fsdim/renyi.hpp"
#include "fsdim/weyl.hpp"

namespace fsdim {

namespace {

struct Check {
    bool pass = true;
    std::ostringstream details;

    void require(bool ok) { pass = pass && ok; }
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

// --- shared fixtures ---------------------------------------------------

// Balanced donor: the uniform-measure Champernowne in complement-paired
// order (every depth-l catalog exactly equidistributed and running digit
// frequencies pinned near 1/2), used where a normal wildcard stream with
// fast finite-n convergence is wanted.
SymbolSequence balanced_champernowne() {
    MuChampernowneSchedule s;
    for (int l = 1; l <= 26; ++l) {
        s.repetition_factors.push_back(std::pow(2.0, l));
        s.block_repeats.push_back(1);
    }
    s.string_order = StringOrder::complement_paired;
    return gen_mu_champernowne(AnalyticMeasure::bernoulli({0.5, 0.5}), s);
}

SymbolSequence diluted_a() {
    return gen_diluted(gen_champernowne(2), DilutionPattern::parse("0*", 2));
}

SymbolSequence diluted_b() {
    return gen_diluted(gen_champernowne(2), DilutionPattern::parse("0**0", 2));
}

StageSchedule lemma41_schedule() { return StageSchedule::geometric(1024, 5, 8, 4); }

SymbolSequence lemma41_sequence() {
    return gen_alternating(DilutionPattern::parse("0*0*", 2), DilutionPattern::parse("0**0", 2),
                           balanced_champernowne(), lemma41_schedule());
}

// Sliding probability of "01" at each requested prefix end, one pass.
std::vector<double> pair01_at(const SymbolSequence& x, const std::vector<std::uint64_t>& ends) {
    std::span<const std::uint8_t> digits = x.prefix(static_cast<std::size_t>(ends.back()));
    std::vector<double> out;
    out.reserve(ends.size());
    std::uint64_t count = 0;
    std::size_t next = 0;
    for (std::uint64_t i = 0; i + 1 < ends.back(); ++i) {
        if (digits[static_cast<std::size_t>(i)] == 0 && digits[static_cast<std::size_t>(i) + 1] == 1)
            ++count;
        while (next < ends.size() && i + 2 == ends[next]) {
            out.push_back(static_cast<double>(count) / static_cast<double>(ends[next] - 1));
            ++next;
        }
    }
    return out;
}

double binary_entropy(double p) {
    auto t = [](double v) { return v > 0.0 ? -v * std::log2(v) : 0.0; };
    return t(p) + t(1.0 - p);
}

// p in (0, 1/2) with H(p) = target, by bisection.
double bias_for_entropy(double target) {
    double lo = 1e-9, hi = 0.5;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (binary_entropy(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// --- criteria ----------------------------------------------------------

CriterionResult c01_normality(int threads) {
    CriterionResult r{"c01", "normality",
                      "Champernowne, n=2^20: sliding restricted H_8 >= 0.96 and |S_n(k)| <= 0.05 "
                      "for k=1..8 (K=64)"};
    Check chk;
    SymbolSequence x = gen_champernowne(2);
    const std::uint64_t n = std::uint64_t{1} << 20;

    double h8 = restricted_entropy(sliding_distribution(x, n, 8));
    chk.require(h8 >= 0.96);
    chk.details << "restricted H_8 = " << fmt(h8);

    std::vector<long long> ks{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<std::uint64_t> cps{n};
    auto series = weyl_series(x, ks, cps, 64, threads);
    double worst = 0.0;
    for (const auto& s : series) worst = std::max(worst, std::abs(s.values[0]));
    chk.require(worst <= 0.05);
    chk.details << ", max |S_n(k)| = " << fmt(worst);
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

CriterionResult c02_dilution_a(int) {
    CriterionResult r{"c02", "dilution-a",
                      "a = diluted 0*, Champernowne donor, n=1e5: |P(a,01)-1/4| <= 0.01 and "
                      "|H^d_2 - 1/2| <= 0.01"};
    Check chk;
    SymbolSequence a = diluted_a();
    const std::uint64_t n = 100000;
    double p01 = sliding_distribution(a, n, 2).probability(std::uint64_t{1});  // "01" packs to 1
    double hd2 = normalized_entropy(disjoint_distribution(a, n, 2));
    chk.require(std::abs(p01 - 0.25) <= 0.01);
    chk.require(std::abs(hd2 - 0.5) <= 0.01);
    chk.details << "P(a,01) = " << fmt(p01) << " (|diff| = " << fmt(std::abs(p01 - 0.25))
                << "), H^d_2 = " << fmt(hd2) << " (|diff| = " << fmt(std::abs(hd2 - 0.5)) << ")";
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

CriterionResult c03_dilution_b(int) {
    CriterionResult r{"c03", "dilution-b",
                      "b = diluted 0**0, Champernowne donor, n=1e5: |P(b,01)-3/16| <= 0.01"};
    Check chk;
    SymbolSequence b = diluted_b();
    const std::uint64_t n = 100000;
    double p01 = sliding_distribution(b, n, 2).probability(std::uint64_t{1});
    chk.require(std::abs(p01 - 3.0 / 16.0) <= 0.01);
    chk.details << "P(b,01) = " << fmt(p01) << " (|diff| = " << fmt(std::abs(p01 - 3.0 / 16.0))
                << ")";
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

CriterionResult c04_lemma41(int) {
    CriterionResult r{"c04", "lemma41",
                      "alternating 0*0* / 0**0, geometric 8-stage schedule: P(.,01) near 1/4 at "
                      "odd stage ends and 3/16 at even ones (0.02), two converged stage-end "
                      "limits, oscillating on all ends"};
    Check chk;
    StageSchedule sched = lemma41_schedule();
    SymbolSequence x = lemma41_sequence();
    std::vector<std::uint64_t> ends = sched.stage_ends();
    std::vector<double> p01 = pair01_at(x, ends);

    double worst_odd = 0.0, worst_even = 0.0;
    for (std::size_t i = 0; i < p01.size(); ++i) {
        if (i % 2 == 0)
            worst_odd = std::max(worst_odd, std::abs(p01[i] - 0.25));
        else
            worst_even = std::max(worst_even, std::abs(p01[i] - 3.0 / 16.0));
    }
    chk.require(worst_odd <= 0.02);
    chk.require(worst_even <= 0.02);
    chk.details << "max |P-1/4| at odd ends = " << fmt(worst_odd)
                << ", max |P-3/16| at even ends = " << fmt(worst_even);

    std::vector<Schedule> schedules{{"odd-ends", {0, 2, 4, 6}},
                                    {"even-ends", {1, 3, 5, 7}},
                                    {"all-ends", {0, 1, 2, 3, 4, 5, 6, 7}}};
    LimitReport rep = limit_report(std::span<const double>(p01), schedules, 0.01);
    chk.require(rep.schedules[0].verdict == Verdict::converged);
    chk.require(rep.schedules[1].verdict == Verdict::converged);
    double lim_odd = rep.schedules[0].candidate_limit.real();
    double lim_even = rep.schedules[1].candidate_limit.real();
    chk.require(std::abs(lim_odd - lim_even) > 2 * rep.tolerance);
    chk.require(rep.schedules[2].verdict == Verdict::oscillating);
    chk.details << "; limits " << fmt(lim_odd) << " vs " << fmt(lim_even) << ", all-ends "
                << to_string(rep.schedules[2].verdict);
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

CriterionResult c05_fourier_consistency(int threads) {
    CriterionResult r{"c05", "fourier-consistency",
                      "Champernowne and the alternating oscillation sequence, n=1e5, L=20, K=64, k<=8: "
                      "|S_n(k) - fourier(nu_n,k)| <= 1e-3"};
    Check chk;
    const std::uint64_t n = 100000;
    double worst = 0.0;
    for (SymbolSequence x : {gen_champernowne(2), lemma41_sequence()}) {
        CylinderMeasure nu = empirical_measure(x, n, 20);
        std::vector<long long> ks{1, 2, 3, 4, 5, 6, 7, 8};
        std::vector<std::uint64_t> cps{n};
        auto series = weyl_series(x, ks, cps, 64, threads);
        for (std::size_t i = 0; i < ks.size(); ++i) {
            std::complex<double> f = measure_fourier(nu, ks[i]);
            worst = std::max(worst, std::abs(series[i].values[0] - f));
        }
    }
    chk.require(worst <= 1e-3);
    chk.details << "max |S_n(k) - c_k(nu_n)| = " << fmt(worst);
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

CriterionResult c06_pushforward_fourier(int) {
    CriterionResult r{"c06", "pushforward-fourier",
                      "Bernoulli(0.3) lift, m=3: |fourier((f_3)*mu, k) - fourier(mu, 3k)| <= 1e-3 "
                      "for k=-4..4"};
    Check chk;
    AnalyticMeasure mu = AnalyticMeasure::bernoulli({0.7, 0.3});
    AnalyticMeasure pf = pushforward_integer(mu, 3);
    CylinderMeasure pf_cells = lift(pf, 12);  // base-3 cells, err 2pi|k|3^-12
    double worst = 0.0;
    for (long long k = -4; k <= 4; ++k) {
        std::complex<double> lhs = measure_fourier(pf_cells, k);
        std::complex<double> rhs = measure_fourier(mu, 3 * k, 22);  // base-2 cells at depth 22
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    chk.require(worst <= 1e-3);
    chk.details << "max |c_k((f_3)*mu) - c_3k(mu)| = " << fmt(worst);
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

CriterionResult c07_partition_invariance(int) {
    CriterionResult r{"c07", "partition-invariance",
                      "Bernoulli(0.3), m1=2, m2=3, l=4..12: normalized entropy difference <= 2/n"};
    Check chk;
    AnalyticMeasure mu = AnalyticMeasure::bernoulli({0.7, 0.3});
    double worst_slack = 1.0;
    for (int l = 4; l <= 12; ++l) {
        InvarianceCheck ic = check_partition_invariance(mu, 2, 3, l, 1e-9);
        chk.require(ic.pass);
        worst_slack = std::min(worst_slack, ic.bound - ic.difference);
        if (l == 12)
            chk.details << "l=12: n=" << ic.matched_depth << ", diff = " << fmt(ic.difference)
                        << " <= bound " << fmt(ic.bound);
    }
    chk.details << ", min slack over l = " << fmt(worst_slack);
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

CriterionResult c08_bernoulli_exact(int) {
    CriterionResult r{"c08", "bernoulli-exact",
                      "renyi_profile(Bernoulli(p), 2, n<=20) equals binary entropy H(p) to 1e-12"};
    Check chk;
    double worst = 0.0;
    for (double p : {0.1, 0.3, 0.5}) {
        AnalyticMeasure mu = AnalyticMeasure::bernoulli({1.0 - p, p});
        std::vector<int> depths;
        for (int n = 1; n <= 20; ++n) depths.push_back(n);
        RenyiProfile prof = renyi_profile(mu, 2, depths);
        double h = binary_entropy(p);
        for (double v : prof.values) worst = std::max(worst, std::abs(v - h));
    }
    chk.require(worst <= 1e-12);
    chk.details << "max |H^2_n/n - H(p)| = " << fmt(worst);
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

CriterionResult c09_mu_champernowne(int) {
    CriterionResult r{"c09", "mu-champernowne",
                      "mu-Champernowne for Bernoulli(p), H(p)=1/2, desk schedule, n=2^20: "
                      "|restricted H_8 - 0.5| <= 0.05"};
    Check chk;
    double p = bias_for_entropy(0.5);
    AnalyticMeasure mu = AnalyticMeasure::bernoulli({1.0 - p, p});
    MuChampernowneSchedule sched = MuChampernowneSchedule::desk(mu, 8, std::uint64_t{1} << 20);
    SymbolSequence x = gen_mu_champernowne(mu, sched);
    chk.details << "desk schedule reaches depth " << sched.stages() << "; ";
    double h8 = restricted_entropy(sliding_distribution(x, std::uint64_t{1} << 20, 8));
    chk.require(std::abs(h8 - 0.5) <= 0.05);
    chk.details << "p = " << fmt(p) << ", restricted H_8 = " << fmt(h8)
                << " (|diff| = " << fmt(std::abs(h8 - 0.5)) << ")";
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

CriterionResult c10_rational_arithmetic(int threads) {
    CriterionResult r{"c10", "rational-arithmetic",
                      "r = value of diluted a, m=3, l=8, n=2^18: |dim_lo(3r) - dim_lo(r)| <= 0.05 "
                      "and |S_n(k;3r) - S_n(3k;r)| <= 1e-6"};
    Check chk;
    SymbolSequence x = diluted_a();
    const std::uint64_t n = std::uint64_t{1} << 18;
    const std::size_t want = static_cast<std::size_t>(n) + 64 + 8;

    CertifiedDigits mul = multiply_mod1(x, 3, want);
    chk.require(mul.certified_count >= want);
    SymbolSequence x3 = mul.to_sequence();

    std::vector<int> ls{1, 2, 4, 8};
    std::vector<std::uint64_t> cps = geometric_checkpoints(n / 8, n);
    DimensionEstimate dr = dimension_profile(x, ls, cps, CountMode::disjoint);
    DimensionEstimate dr3 = dimension_profile(x3, ls, cps, CountMode::disjoint);
    double gap = std::abs(dr3.dim_lo - dr.dim_lo);
    chk.require(gap <= 0.05);
    chk.details << "dim_lo(r) = " << fmt(dr.dim_lo) << ", dim_lo(3r) = " << fmt(dr3.dim_lo)
                << ", gap = " << fmt(gap);

    std::vector<std::uint64_t> cp1{n};
    std::vector<long long> ks{1, 2, 3, 4};
    std::vector<long long> ks3{3, 6, 9, 12};
    auto s3r = weyl_series(x3, ks, cp1, 64, threads);
    auto sr = weyl_series(x, ks3, cp1, 64, threads);
    double worst = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i)
        worst = std::max(worst, std::abs(s3r[i].values[0] - sr[i].values[0]));
    chk.require(worst <= 1e-6);
    chk.details << ", max phase-identity gap = " << fmt(worst);
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

CriterionResult c11_sgale(int) {
    CriterionResult r{"c11", "sgale",
                      "100 random gamblers (<=8 states), |w| <= 12: s-gale identity to 1e-12; "
                      "beta=0 on 0^n gives log2 capital exactly s*n"};
    Check chk;
    std::mt19937 rng(1234);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        int states = 1 + static_cast<int>(rng() % 8);
        Gambler g;
        g.start_state = 0;
        g.initial_capital = 1.0;
        bool tame = trial % 2 == 1;
        for (int q = 0; q < states; ++q) {
            g.delta.push_back({static_cast<int>(rng() % states), static_cast<int>(rng() % states)});
            int grid = tame ? 16 + static_cast<int>(rng() % 33) : static_cast<int>(rng() % 65);
            g.beta.push_back(grid / 64.0);
        }
        double s = tame ? (rng() % 17) / 16.0 : (rng() % 13) / 16.0;

        // d over the full tree of words |w| <= 12, threading capital along
        // the path; the identity at w involves the children w0, w1.
        const double pow2s = std::pow(2.0, s);
        std::function<double(int, double, int)> walk = [&](int state, double cap,
                                                           int depth) -> double {
            double d0 = pow2s * cap * (1.0 - g.beta[static_cast<std::size_t>(state)]);
            double d1 = pow2s * cap * g.beta[static_cast<std::size_t>(state)];
            double residual = std::abs(cap - (d0 + d1) / pow2s);
            if (depth < 12) {
                residual = std::max(residual,
                                    walk(g.delta[static_cast<std::size_t>(state)][0], d0, depth + 1));
                residual = std::max(residual,
                                    walk(g.delta[static_cast<std::size_t>(state)][1], d1, depth + 1));
            }
            return residual;
        };
        worst = std::max(worst, walk(g.start_state, g.initial_capital, 0));
    }
    chk.require(worst <= 1e-12);
    chk.details << "max identity residual = " << fmt(worst);

    // beta = 0 always wins on zeros: each step multiplies capital by 2^s.
    Gambler zero;
    zero.delta = {{0, 0}};
    zero.beta = {0.0};
    double worst_exact = 0.0;
    for (double s : {0.25, 0.5, 0.75, 1.0, 1.5}) {
        SgaleTrace t = sgale_evaluate(zero, s, gen_constant(2, 0), 4096);
        for (std::size_t i = 0; i <= 4096; ++i)
            worst_exact = std::max(worst_exact,
                                   std::abs(t.log2_capital[i] - s * static_cast<double>(i)));
    }
    chk.require(worst_exact == 0.0);
    chk.details << ", log2-capital vs s*n max gap = " << fmt(worst_exact) << " (dyadic s)";
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

CriterionResult c12_entropy_inequalities(int) {
    CriterionResult r{"c12", "entropy-inequalities",
                      "all corpora, n=1e5: H^d_{kl} <= H^d_l + 0.05; (l+m)H_{l+m} <= lH_l + mH_m "
                      "+ 0.05(l+m); restricted <= full <= restricted + 2/l"};
    Check chk;
    const std::uint64_t n = 100000;
    double p = bias_for_entropy(0.5);
    AnalyticMeasure mu = AnalyticMeasure::bernoulli({1.0 - p, p});
    std::vector<SymbolSequence> corpora;
    corpora.push_back(gen_champernowne(2));
    corpora.push_back(diluted_a());
    corpora.push_back(diluted_b());
    corpora.push_back(lemma41_sequence());
    corpora.push_back(gen_mu_champernowne(mu, MuChampernowneSchedule::desk(mu, 8, n)));

    double worst_disjoint = -1.0, worst_subadd = -1.0, worst_restricted = -1.0;
    for (const SymbolSequence& x : corpora) {
        // disjoint refinement, kl | n
        for (int l : {1, 2, 4}) {
            double hl = normalized_entropy(disjoint_distribution(x, n, l));
            double hkl = normalized_entropy(disjoint_distribution(x, n, 2 * l));
            worst_disjoint = std::max(worst_disjoint, hkl - hl);
            chk.require(hkl <= hl + 0.05);
        }
        // sliding entropies for l <= 8
        std::array<double, 9> h{};
        std::array<double, 9> ht{};
        for (int l = 1; l <= 8; ++l) {
            BlockDistribution d = sliding_distribution(x, n, l);
            h[static_cast<std::size_t>(l)] = normalized_entropy(d);
            ht[static_cast<std::size_t>(l)] = restricted_entropy(d);
        }
        for (int l = 1; l <= 7; ++l) {
            for (int m = l; l + m <= 8; ++m) {
                double lhs = (l + m) * h[static_cast<std::size_t>(l + m)];
                double rhs = l * h[static_cast<std::size_t>(l)] + m * h[static_cast<std::size_t>(m)] +
                             0.05 * (l + m);
                worst_subadd = std::max(worst_subadd, lhs - (rhs - 0.05 * (l + m)));
                chk.require(lhs <= rhs);
            }
        }
        for (int l = 1; l <= 8; ++l) {
            double full = h[static_cast<std::size_t>(l)];
            double restr = ht[static_cast<std::size_t>(l)];
            chk.require(restr <= full + 1e-12);
            chk.require(full <= restr + 2.0 / l + 1e-12);
            worst_restricted = std::max(worst_restricted, std::max(restr - full, full - restr - 2.0 / l));
        }
    }
    chk.details << "max H^d_{2l}-H^d_l = " << fmt(worst_disjoint)
                << ", max unscaled subadditivity excess = " << fmt(worst_subadd)
                << ", max restricted-bound excess = " << fmt(worst_restricted);
    r.pass = chk.pass;
    r.details = chk.details.str();
    return r;
}

struct CaseEntry {
    const char* id;
    const char* alias;
    CriterionResult (*fn)(int);
};

constexpr CaseEntry kCases[] = {
    {"c01", "normality", c01_normality},
    {"c02", "dilution-a", c02_dilution_a},
    {"c03", "dilution-b", c03_dilution_b},
    {"c04", "lemma41", c04_lemma41},
    {"c05", "fourier-consistency", c05_fourier_consistency},
    {"c06", "pushforward-fourier", c06_pushforward_fourier},
    {"c07", "partition-invariance", c07_partition_invariance},
    {"c08", "bernoulli-exact", c08_bernoulli_exact},
    {"c09", "mu-champernowne", c09_mu_champernowne},
    {"c10", "rational-arithmetic", c10_rational_arithmetic},
    {"c11", "sgale", c11_sgale},
    {"c12", "entropy-inequalities", c12_entropy_inequalities},
};

}  // namespace

std::vector<std::string> acceptance_case_ids() {
    std::vector<std::string> ids;
    for (const auto& c : kCases) ids.push_back(c.id);
    return ids;
}

CriterionResult run_acceptance_case(const std::string& which, int threads) {
    for (const auto& c : kCases) {
        if (which == c.id || which == c.alias) {
            auto start = std::chrono::steady_clock::now();
            CriterionResult r = c.fn(threads);
            r.alias = c.alias;
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return r;
        }
    }
    throw std::invalid_argument("unknown acceptance case '" + which + "'");
}

std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& which, int threads) {
    std::vector<CriterionResult> results;
    if (which.empty()) {
        for (const auto& c : kCases) results.push_back(run_acceptance_case(c.id, threads));
    } else {
        for (const auto& w : which) results.push_back(run_acceptance_case(w, threads));
    }
    return results;
}

}  // namespace fsdim
