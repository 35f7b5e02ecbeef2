#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "fsdim/analytic_measure.hpp"
#include "fsdim/generators.hpp"
#include "fsdim/io.hpp"
#include "fsdim/renyi.hpp"
#include "fsdim/weyl.hpp"

using namespace fsdim;

namespace {

double binary_entropy(double p) {
    auto t = [](double v) { return v > 0.0 ? -v * std::log2(v) : 0.0; };
    return t(p) + t(1.0 - p);
}

}  // namespace

TEST_CASE("cylinder probabilities, closed forms") {
    SUBCASE("bernoulli product") {
        AnalyticMeasure mu = AnalyticMeasure::bernoulli({0.7, 0.3});
        CHECK(mu.cylinder_prob("11") == doctest::Approx(0.09).epsilon(1e-15));
        CHECK(mu.cylinder_prob("") == 1.0);
    }
    SUBCASE("point mass indicator") {
        AnalyticMeasure mu = AnalyticMeasure::point_mass(gen_periodic(2, {0, 1}));
        CHECK(mu.cylinder_prob("01") == 1.0);
        CHECK(mu.cylinder_prob("00") == 0.0);
    }
    SUBCASE("markov chain") {
        AnalyticMeasure mu = AnalyticMeasure::markov({0.5, 0.5}, {{0.9, 0.1}, {0.2, 0.8}});
        CHECK(mu.cylinder_prob("01") == doctest::Approx(0.5 * 0.1));
        CHECK(mu.cylinder_prob("010") == doctest::Approx(0.5 * 0.1 * 0.2));
    }
    SUBCASE("pushforward by 2 sums sibling cylinders") {
        AnalyticMeasure mu = AnalyticMeasure::markov({0.6, 0.4}, {{0.9, 0.1}, {0.15, 0.85}});
        // stationary? not needed for this identity
        AnalyticMeasure pf = AnalyticMeasure::pushforward(mu, 2);
        std::vector<std::uint8_t> w{0, 1};
        std::vector<std::uint8_t> w0{0, 0, 1};
        std::vector<std::uint8_t> w1{1, 0, 1};
        CHECK(pf.cylinder_prob(w) ==
              doctest::Approx(mu.cylinder_prob(w0) + mu.cylinder_prob(w1)).epsilon(1e-12));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS(AnalyticMeasure::bernoulli({0.5, 0.6}));
        CHECK_THROWS(AnalyticMeasure::markov({1.0, 0.0}, {{0.5, 0.5}}));
    }
}

TEST_CASE("cdf walks") {
    AnalyticMeasure mu = AnalyticMeasure::bernoulli({0.7, 0.3});
    SUBCASE("terminating endpoints are exact") {
        // F(1/2) = mu(C_0) = 0.7, F(1/4) = mu(C_00) = 0.49
        CHECK(mu.cdf({1, 2}) == doctest::Approx(0.7).epsilon(1e-15));
        CHECK(mu.cdf({1, 4}) == doctest::Approx(0.49).epsilon(1e-15));
        CHECK(mu.cdf({3, 4}) == doctest::Approx(0.7 + 0.3 * 0.7).epsilon(1e-15));
        CHECK(mu.cdf({0, 1}) == 0.0);
        CHECK(mu.cdf({1, 1}) == 1.0);
    }
    SUBCASE("interval masses add up") {
        double total = 0.0;
        for (int j = 0; j < 27; ++j) total += mu.interval_mass({j, 27}, {j + 1, 27});
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("point mass cdf is a step") {
        AnalyticMeasure d = AnalyticMeasure::point_mass(SymbolSequence::from_string(2, "01"));
        // v = 1/4
        CHECK(d.cdf({1, 4}) == 0.0);   // [0, 1/4) misses it
        CHECK(d.cdf({1, 3}) == 1.0);   // 1/4 < 1/3
        CHECK(d.cdf({1, 8}) == 0.0);
    }
    SUBCASE("trailing-ones representation maps to the same point") {
        // digits 0111... (evaluating to exactly 1/2)
        StageSchedule two;
        two.stage_lengths = {2, 2};
        two.alignment = 1;
        AnalyticMeasure d = AnalyticMeasure::point_mass(
            gen_alternating(DilutionPattern::parse("0*", 2), DilutionPattern::parse("*", 2),
                            gen_constant(2, 1), two));
        CHECK(d.cdf({1, 2}) == 0.0);
        CHECK(d.cdf({3, 4}) == 1.0);
    }
}

TEST_CASE("interval lift round trips") {
    SUBCASE("uniform masses lift to the uniform measure") {
        std::vector<std::vector<double>> masses{{0.5, 0.5}, {0.25, 0.25, 0.25, 0.25}};
        CylinderMeasure m = lift(2, masses, 2);
        CHECK(m.prob("0") == 0.5);
        CHECK(m.prob("01") == 0.25);
    }
    SUBCASE("mass concentrated on [0, 1/2)") {
        std::vector<std::vector<double>> masses{{1.0, 0.0}};
        CylinderMeasure m = lift(2, masses, 1);
        CHECK(m.prob("0") == 1.0);
        CHECK(m.prob("1") == 0.0);
    }
    SUBCASE("bernoulli interval masses reproduce cylinder probabilities") {
        AnalyticMeasure mu = AnalyticMeasure::bernoulli({0.7, 0.3});
        CylinderMeasure lifted = lift(mu, 10);
        std::vector<std::uint8_t> w{0, 1, 1, 0, 1};
        CHECK(lifted.prob(w) == doctest::Approx(mu.cylinder_prob(w)).epsilon(1e-12));
        CHECK(lifted.consistency_defect() < 1e-12);
    }
    SUBCASE("inconsistent masses rejected") {
        std::vector<std::vector<double>> masses{{0.5, 0.5}, {0.4, 0.2, 0.25, 0.25}};
        CHECK_THROWS(lift(2, masses, 2));
    }
    SUBCASE("requests beyond the table resolution rejected") {
        AnalyticMeasure mu = AnalyticMeasure::interval_lift(2, {{0.5, 0.5}});
        CHECK_THROWS(lift(mu, 3));
        CHECK_THROWS(partition_entropy(mu, 2, 3));
        CHECK_THROWS(measure_fourier(mu, 1, 3));
        CHECK(partition_entropy(mu, 2, 1) == doctest::Approx(std::log(2.0)));
    }
}

TEST_CASE("average entropy profiles") {
    SUBCASE("fair coin is exactly 1") {
        AnalyticMeasure u = AnalyticMeasure::bernoulli({0.5, 0.5});
        for (double v : average_entropy_profile(u, {1, 5, 12}))
            CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("biased coin is constant H(p) in n") {
        AnalyticMeasure mu = AnalyticMeasure::bernoulli({0.8, 0.2});
        for (double v : average_entropy_profile(mu, {1, 3, 7, 15}))
            CHECK(v == doctest::Approx(binary_entropy(0.2)).epsilon(1e-12));
    }
    SUBCASE("point mass is 0") {
        AnalyticMeasure d = AnalyticMeasure::point_mass(gen_constant(2, 0));
        for (double v : average_entropy_profile(d, {1, 8})) CHECK(v == 0.0);
    }
    SUBCASE("closed form extends past the enumeration cap") {
        AnalyticMeasure mu = AnalyticMeasure::bernoulli({0.8, 0.2});
        CHECK(normalized_partition_entropy(mu, 2, 40) ==
              doctest::Approx(binary_entropy(0.2)).epsilon(1e-12));
    }
    SUBCASE("depths beyond enumeration are rejected when no closed form exists") {
        AnalyticMeasure pf = pushforward_integer(AnalyticMeasure::bernoulli({0.7, 0.3}), 2);
        CHECK_THROWS(partition_entropy(pf, 2, 30));
        CHECK_THROWS(partition_entropy(AnalyticMeasure::bernoulli({0.7, 0.3}), 3, 30));
    }
}

TEST_CASE("markov entropy: enumeration matches the stationary closed form") {
    // pi = (2/3, 1/3) is stationary for P = ((0.9, 0.1), (0.2, 0.8))
    std::vector<double> pi{2.0 / 3.0, 1.0 / 3.0};
    std::vector<std::vector<double>> P{{0.9, 0.1}, {0.2, 0.8}};
    AnalyticMeasure mu = AnalyticMeasure::markov(pi, P);
    auto hrow = [&](int q) {
        double h = 0.0;
        for (double v : P[static_cast<std::size_t>(q)])
            if (v > 0.0) h -= v * std::log(v);
        return h;
    };
    double h0 = -pi[0] * std::log(pi[0]) - pi[1] * std::log(pi[1]);
    double hstep = pi[0] * hrow(0) + pi[1] * hrow(1);
    for (int n : {1, 2, 5, 12}) {
        double expect = h0 + (n - 1) * hstep;
        CHECK(partition_entropy(mu, 2, n) == doctest::Approx(expect).epsilon(1e-12));
    }
    // closed form beyond the enumeration cap agrees with the recurrence
    CHECK(partition_entropy(mu, 2, 40) == doctest::Approx(h0 + 39 * hstep).epsilon(1e-12));
    // non-stationary chains cannot use the closed form
    AnalyticMeasure skew = AnalyticMeasure::markov({0.5, 0.5}, P);
    CHECK_THROWS(partition_entropy(skew, 2, 40));
}

TEST_CASE("renyi profiles and partition invariance") {
    SUBCASE("fair coin, any factor: 1 at all depths") {
        AnalyticMeasure u = AnalyticMeasure::bernoulli({0.5, 0.5});
        RenyiProfile prof = renyi_profile(u, 2, {1, 4, 8});
        for (double v : prof.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
        // cross-base: uniform measure stays uniform on triadic cells
        CHECK(normalized_partition_entropy(u, 3, 6) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("point mass: 0 for any factor") {
        AnalyticMeasure d = AnalyticMeasure::point_mass(gen_constant(2, 0));
        CHECK(normalized_partition_entropy(d, 3, 6) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("identical factors give zero difference") {
        AnalyticMeasure mu = AnalyticMeasure::bernoulli({0.7, 0.3});
        InvarianceCheck ic = check_partition_invariance(mu, 2, 2, 6, 1e-12);
        CHECK(ic.matched_depth == 6);
        CHECK(ic.difference <= 1e-12);
        CHECK(ic.pass);
    }
    SUBCASE("bernoulli(0.3), factors 2 vs 4") {
        AnalyticMeasure mu = AnalyticMeasure::bernoulli({0.7, 0.3});
        InvarianceCheck ic = check_partition_invariance(mu, 2, 4, 5, 1e-12);
        CHECK(ic.matched_depth == 10);  // 2^10 = 4^5
        CHECK(ic.pass);
        CHECK(ic.difference <= 0.2);
    }
    SUBCASE("uniform: both sides exactly 1") {
        AnalyticMeasure u = AnalyticMeasure::bernoulli({0.5, 0.5});
        InvarianceCheck ic = check_partition_invariance(u, 2, 3, 5, 1e-9);
        CHECK(ic.difference <= 1e-9);
        CHECK(ic.pass);
    }
}

TEST_CASE("pushforward properties") {
    AnalyticMeasure mu = AnalyticMeasure::bernoulli({0.7, 0.3});
    SUBCASE("m = 1 is the measure itself") {
        AnalyticMeasure same = pushforward_integer(mu, 1);
        CHECK(same.kind() == AnalyticMeasure::Kind::bernoulli);
        CHECK(same.cylinder_prob("101") == doctest::Approx(mu.cylinder_prob("101")));
    }
    SUBCASE("uniform is invariant under every factor") {
        AnalyticMeasure u = AnalyticMeasure::bernoulli({0.5, 0.5});
        AnalyticMeasure pf = pushforward_integer(u, 3);
        for (int j = 0; j < 9; ++j) {
            std::vector<std::uint8_t> w{static_cast<std::uint8_t>(j / 3),
                                        static_cast<std::uint8_t>(j % 3)};
            CHECK(pf.cylinder_prob(w) == doctest::Approx(1.0 / 9).epsilon(1e-12));
        }
    }
    SUBCASE("fourier shift: coefficients of (f_m)* mu at k are mu's at km") {
        AnalyticMeasure pf = pushforward_integer(mu, 2);
        for (long long k : {1, 2, 3}) {
            std::complex<double> lhs = measure_fourier(pf, k, 16);
            std::complex<double> rhs = measure_fourier(mu, 2 * k, 18);
            CHECK(std::abs(lhs - rhs) < 1e-3);
        }
    }
    SUBCASE("renyi pushforward entropy sandwich, exact") {
        // H^m_{n+1}(mu) - log m <= H^m_n((f_m)* mu) <= H^m_{n+1}(mu)
        for (int m : {2, 3}) {
            AnalyticMeasure pf = pushforward_integer(mu, m);
            for (int n = 1; n <= 6; ++n) {
                double hn_pf = partition_entropy(pf, m, n);
                double hn1 = partition_entropy(mu, m, n + 1);
                CHECK(hn_pf <= hn1 + 1e-9);
                CHECK(hn_pf >= hn1 - std::log(m) - 1e-9);
            }
        }
    }
}

TEST_CASE("cylinder additivity holds for every measure kind") {
    std::mt19937 rng(555);
    auto random_word = [&](int base, int len) {
        std::vector<std::uint8_t> w;
        for (int i = 0; i < len; ++i) w.push_back(static_cast<std::uint8_t>(rng() % base));
        return w;
    };
    std::vector<AnalyticMeasure> measures;
    measures.push_back(AnalyticMeasure::bernoulli({0.7, 0.3}));
    measures.push_back(AnalyticMeasure::bernoulli({0.2, 0.5, 0.3}));
    measures.push_back(AnalyticMeasure::markov({0.5, 0.5}, {{0.9, 0.1}, {0.2, 0.8}}));
    measures.push_back(AnalyticMeasure::point_mass(gen_periodic(2, {1, 0, 0})));
    measures.push_back(pushforward_integer(AnalyticMeasure::bernoulli({0.7, 0.3}), 3));
    measures.push_back(AnalyticMeasure::interval_lift(
        2, {{0.25, 0.75}, {0.2, 0.05, 0.7, 0.05}}));
    for (const auto& mu : measures) {
        for (int trial = 0; trial < 40; ++trial) {
            int maxlen = mu.kind() == AnalyticMeasure::Kind::interval_lift ? 1 : 6;
            auto w = random_word(mu.base(), 1 + static_cast<int>(rng() % static_cast<unsigned>(maxlen)));
            double direct = mu.cylinder_prob(w);
            double split = 0.0;
            std::vector<std::uint8_t> wa(w);
            wa.push_back(0);
            for (int a = 0; a < mu.base(); ++a) {
                wa.back() = static_cast<std::uint8_t>(a);
                split += mu.cylinder_prob(wa);
            }
            CHECK(std::abs(direct - split) <= 1e-10);
        }
    }
}

TEST_CASE("cdf is monotone with unit range") {
    std::vector<AnalyticMeasure> measures;
    measures.push_back(AnalyticMeasure::bernoulli({0.6, 0.4}));
    measures.push_back(pushforward_integer(AnalyticMeasure::markov(
        {0.5, 0.5}, {{0.7, 0.3}, {0.4, 0.6}}), 2));
    for (const auto& mu : measures) {
        double prev = 0.0;
        for (int j = 0; j <= 81; ++j) {
            double f = mu.cdf({j, 81});
            CHECK(f >= prev - 1e-12);
            CHECK(f <= 1.0 + 1e-12);
            prev = f;
        }
        CHECK(prev == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("measure JSON round trip") {
    AnalyticMeasure b = parse_measure_json(R"({"kind":"bernoulli","p":[0.7,0.3]})");
    CHECK(b.kind() == AnalyticMeasure::Kind::bernoulli);
    CHECK(b.cylinder_prob("1") == doctest::Approx(0.3));

    AnalyticMeasure mk = parse_measure_json(
        R"({"kind":"markov","pi":[0.5,0.5],"P":[[0.9,0.1],[0.1,0.9]]})");
    CHECK(mk.cylinder_prob("00") == doctest::Approx(0.45));

    AnalyticMeasure pm = parse_measure_json(R"({"kind":"pointmass","digits":"010"})");
    CHECK(pm.cylinder_prob("01") == 1.0);

    AnalyticMeasure pf =
        parse_measure_json(R"({"kind":"pushforward","m":3,"inner":{"kind":"bernoulli","p":[0.7,0.3]}})");
    CHECK(pf.base() == 3);
    CHECK(pf.kind() == AnalyticMeasure::Kind::pushforward);

    CHECK_THROWS(parse_measure_json(R"({"kind":"mystery"})"));
}
