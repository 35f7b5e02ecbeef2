#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fsdim/block_distribution.hpp"
#include "fsdim/dimension.hpp"
#include "fsdim/generators.hpp"

using namespace fsdim;

namespace {

// Brute-force counting oracle, no packing tricks.
std::map<std::string, std::uint64_t> count_oracle(const std::string& digits, int l, bool sliding) {
    std::map<std::string, std::uint64_t> counts;
    if (sliding) {
        for (std::size_t i = 0; i + static_cast<std::size_t>(l) <= digits.size(); ++i)
            ++counts[digits.substr(i, static_cast<std::size_t>(l))];
    } else {
        for (std::size_t i = 0; (i + 1) * static_cast<std::size_t>(l) <= digits.size(); ++i)
            ++counts[digits.substr(i * static_cast<std::size_t>(l), static_cast<std::size_t>(l))];
    }
    return counts;
}

std::vector<std::uint8_t> to_digits(const std::string& s) {
    std::vector<std::uint8_t> d;
    for (char c : s) d.push_back(static_cast<std::uint8_t>(c - '0'));
    return d;
}

std::string random_digits(int base, std::size_t n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::string s;
    for (std::size_t i = 0; i < n; ++i)
        s += static_cast<char>('0' + static_cast<int>(rng() % static_cast<unsigned>(base)));
    return s;
}

}  // namespace

TEST_CASE("sliding distribution hand cases") {
    SymbolSequence x = SymbolSequence::from_string(2, "0101");
    BlockDistribution d = sliding_distribution(x, 4, 2);
    CHECK(d.total == 3);
    CHECK(d.probability(std::uint64_t{0b01}) == doctest::Approx(2.0 / 3));
    CHECK(d.probability(std::uint64_t{0b10}) == doctest::Approx(1.0 / 3));

    BlockDistribution c = sliding_distribution(SymbolSequence::from_string(2, "0000"), 4, 2);
    CHECK(c.probability(std::uint64_t{0b00}) == 1.0);

    BlockDistribution u = sliding_distribution(SymbolSequence::from_string(2, "0011"), 4, 1);
    CHECK(u.probability(std::uint64_t{0}) == 0.5);
    CHECK(u.probability(std::uint64_t{1}) == 0.5);
}

TEST_CASE("disjoint distribution hand cases") {
    BlockDistribution d = disjoint_distribution(SymbolSequence::from_string(2, "010101"), 6, 2);
    CHECK(d.total == 3);
    CHECK(d.probability(std::uint64_t{0b01}) == 1.0);

    BlockDistribution e = disjoint_distribution(SymbolSequence::from_string(2, "0110"), 4, 2);
    CHECK(e.probability(std::uint64_t{0b01}) == 0.5);
    CHECK(e.probability(std::uint64_t{0b10}) == 0.5);
}

TEST_CASE("counts agree with the brute-force oracle") {
    for (int base : {2, 3}) {
        std::string s = random_digits(base, 2000, 42 + static_cast<std::uint32_t>(base));
        for (int l : {1, 2, 3, 5}) {
            auto oracle = count_oracle(s, l, true);
            BlockDistribution d =
                sliding_distribution(SymbolSequence::from_string(base, s), s.size(), l);
            std::uint64_t checked = 0;
            for (const auto& [w, c] : oracle) {
                CHECK(d.counts[pack_block(to_digits(w), base)] == c);
                checked += c;
            }
            CHECK(checked == d.total);

            auto oracle_d = count_oracle(s, l, false);
            BlockDistribution dd =
                disjoint_distribution(SymbolSequence::from_string(base, s), s.size(), l);
            for (const auto& [w, c] : oracle_d)
                CHECK(dd.counts[pack_block(to_digits(w), base)] == c);
        }
    }
}

TEST_CASE("window shorter than block rejected") {
    SymbolSequence x = SymbolSequence::from_string(2, "01");
    CHECK_THROWS(sliding_distribution(x, 2, 3));
    CHECK_THROWS(disjoint_distribution(x, 1, 2));
}

TEST_CASE("normalized entropy values") {
    SUBCASE("uniform blocks give 1") {
        // 00 01 10 11 each once, disjoint
        BlockDistribution d = disjoint_distribution(SymbolSequence::from_string(2, "00011011"), 8, 2);
        CHECK(normalized_entropy(d) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("single block gives 0") {
        BlockDistribution d = disjoint_distribution(SymbolSequence::from_string(2, "0000"), 4, 2);
        CHECK(normalized_entropy(d) == 0.0);
    }
    SUBCASE("two equiprobable blocks at l=2 give 0.5") {
        BlockDistribution d = disjoint_distribution(SymbolSequence::from_string(2, "0011"), 4, 2);
        CHECK(normalized_entropy(d) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("permutation invariance in block labels") {
        std::mt19937 rng(7);
        BlockDistribution d;
        d.base = 2;
        d.block_length = 3;
        d.total = 0;
        d.counts.assign(8, 0);
        for (auto& c : d.counts) {
            c = rng() % 100;
            d.total += c;
        }
        double h = normalized_entropy(d);
        std::shuffle(d.counts.begin(), d.counts.end(), rng);
        CHECK(normalized_entropy(d) == doctest::Approx(h).epsilon(1e-13));
    }
}

TEST_CASE("restricted entropy") {
    SUBCASE("mass only on a constant block gives 0") {
        BlockDistribution d = sliding_distribution(SymbolSequence::from_string(2, "00000"), 5, 3);
        CHECK(restricted_entropy(d) == 0.0);
    }
    SUBCASE("uniform pairs: dropping 00 and 11 leaves 0.5") {
        BlockDistribution d = disjoint_distribution(SymbolSequence::from_string(2, "00011011"), 8, 2);
        CHECK(restricted_entropy(d) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("bounds hold for random distributions") {
        std::string s = random_digits(2, 5000, 99);
        for (int l = 1; l <= 8; ++l) {
            BlockDistribution d =
                sliding_distribution(SymbolSequence::from_string(2, s), s.size(), l);
            double full = normalized_entropy(d);
            double restricted = restricted_entropy(d);
            CHECK(restricted <= full + 1e-13);
            CHECK(full <= restricted + 2.0 / l + 1e-13);
        }
    }
}

TEST_CASE("parallel chunk-merged counts agree exactly") {
    SymbolSequence x = gen_champernowne(2);
    auto digits = x.prefix(200001);
    for (int threads : {2, 3, 8}) {
        auto serial = sliding_counts(digits, 2, 6);
        auto parallel = sliding_counts_parallel(digits, 2, 6, threads);
        CHECK(serial == parallel);
    }
}

TEST_CASE("subadditivity and disjoint refinement on a real corpus") {
    SymbolSequence x = gen_champernowne(2);
    const std::uint64_t n = 100000;
    std::vector<double> h(9, 0.0);
    for (int l = 1; l <= 8; ++l) h[static_cast<std::size_t>(l)] = normalized_entropy(sliding_distribution(x, n, l));
    for (int l = 1; l <= 4; ++l)
        for (int m = 1; l + m <= 8; ++m)
            CHECK((l + m) * h[static_cast<std::size_t>(l + m)] <=
                  l * h[static_cast<std::size_t>(l)] + m * h[static_cast<std::size_t>(m)] + 0.05 * (l + m));
    for (int l : {1, 2, 4}) {
        double hl = normalized_entropy(disjoint_distribution(x, n, l));
        double h2l = normalized_entropy(disjoint_distribution(x, n, 2 * l));
        CHECK(h2l <= hl + 0.05);
    }
}

TEST_CASE("dimension profile basics") {
    SUBCASE("periodic sequences decay like log(period)/l") {
        // period 3 means exactly 3 distinct blocks at every l >= 2
        SymbolSequence x = gen_periodic(2, {0, 1, 1});
        DimensionEstimate est =
            dimension_profile(x, {4, 8, 16}, {4096, 8192, 16384}, CountMode::sliding);
        CHECK(std::abs(est.dim_hi - est.dim_lo) < 1e-3);
        CHECK(est.dim_lo == doctest::Approx(std::log2(3.0) / 16).epsilon(1e-2));
        CHECK(est.tails[2].max < est.tails[1].min);  // heading to 0 as l grows
    }
    SUBCASE("champernowne heads toward 1") {
        SymbolSequence x = gen_champernowne(2);
        DimensionEstimate est =
            dimension_profile(x, {1, 2, 4, 8}, geometric_checkpoints(1 << 17, 1 << 20),
                              CountMode::sliding);
        CHECK(est.dim_lo >= 0.96);
        CHECK(est.dim_hi <= 1.0);
    }
    SUBCASE("diluted sequence sits near one half at l = 8, disjoint mode") {
        SymbolSequence a = gen_diluted(gen_champernowne(2), DilutionPattern::parse("0*", 2));
        DimensionEstimate est =
            dimension_profile(a, {8}, geometric_checkpoints(1 << 17, 1 << 20), CountMode::disjoint);
        CHECK(std::abs(est.dim_lo - 0.5) <= 0.05);
        CHECK(std::abs(est.dim_hi - 0.5) <= 0.05);
    }
    SUBCASE("argument validation") {
        SymbolSequence x = gen_champernowne(2);
        CHECK_THROWS(dimension_profile(x, {}, {100}, CountMode::sliding));
        CHECK_THROWS(dimension_profile(x, {4}, {}, CountMode::sliding));
        CHECK_THROWS(dimension_profile(x, {128}, {100}, CountMode::sliding));
    }
}

TEST_CASE("incremental checkpoint counting matches fresh counts") {
    SymbolSequence x = gen_champernowne(2);
    DimensionEstimate est = dimension_profile(x, {3}, {1000, 2000, 4000}, CountMode::sliding);
    for (std::size_t i = 0; i < est.checkpoints.size(); ++i) {
        double fresh = normalized_entropy(sliding_distribution(x, est.checkpoints[i], 3));
        CHECK(est.entropy[0][i] == doctest::Approx(fresh).epsilon(1e-15));
    }
}
