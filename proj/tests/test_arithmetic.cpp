#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "fsdim/arithmetic.hpp"
#include "fsdim/generators.hpp"
#include "fsdim/weyl.hpp"

using namespace fsdim;

namespace {

std::string digit_string(const CertifiedDigits& d) {
    std::string s;
    for (std::size_t i = 0; i < d.certified_count; ++i)
        s += static_cast<char>('0' + d.digits[i]);
    return s;
}

// Exact rational oracle: base-b digits of (num/den) mod 1 by long division.
std::string rational_digits(std::uint64_t num, std::uint64_t den, int base, std::size_t count) {
    num %= den;
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        num *= static_cast<std::uint64_t>(base);
        out += static_cast<char>('0' + num / den);
        num %= den;
    }
    return out;
}

}  // namespace

TEST_CASE("multiply_mod1 exact rational cases") {
    SUBCASE("3 * 5/16 = 15/16") {
        SymbolSequence x = SymbolSequence::from_string(2, "01010000000000000000");
        CertifiedDigits d = multiply_mod1(x, 3, 12);
        CHECK(d.certified_count == 12);
        CHECK(digit_string(d) == rational_digits(15, 16, 2, 12));
        CHECK(digit_string(d).substr(0, 4) == "1111");
    }
    SUBCASE("m = 1 is the identity") {
        SymbolSequence x = gen_champernowne(2);
        CertifiedDigits d = multiply_mod1(x, 1, 64);
        CHECK(d.certified_count == 64);
        auto digits = x.prefix(64);
        for (std::size_t i = 0; i < 64; ++i) CHECK(d.digits[i] == digits[i]);
    }
    SUBCASE("2 * 1/2 wraps to 0") {
        SymbolSequence x = SymbolSequence::from_string(2, std::string("1") + std::string(63, '0'));
        CertifiedDigits d = multiply_mod1(x, 2, 32);
        CHECK(d.certified_count == 32);
        CHECK(digit_string(d) == std::string(32, '0'));
    }
    SUBCASE("random rationals against the oracle") {
        std::mt19937 rng(2024);
        for (int trial = 0; trial < 40; ++trial) {
            std::uint64_t den = 1 + rng() % 10000;
            std::uint64_t num = rng() % den;
            std::uint64_t m = 1 + rng() % 50;
            int base = (trial % 2) ? 2 : 3;
            std::string input = rational_digits(num, den, base, 200);
            CertifiedDigits d =
                multiply_mod1(SymbolSequence::from_string(base, input), m, 40);
            // certified digits must match exact rational arithmetic
            std::string expect = rational_digits(num * m, den, base, d.certified_count);
            CHECK(digit_string(d) == expect);
            CHECK(d.certified_count >= 30);  // 200 input digits certify plenty
        }
    }
}

TEST_CASE("add_rational_mod1 exact cases") {
    SUBCASE("p/q = 0 is the identity") {
        SymbolSequence x = gen_champernowne(2);
        CertifiedDigits d = add_rational_mod1(x, 0, 7, 48);
        auto digits = x.prefix(48);
        CHECK(d.certified_count == 48);
        for (std::size_t i = 0; i < 48; ++i) CHECK(d.digits[i] == digits[i]);
    }
    SUBCASE("zeros plus 1/2") {
        CertifiedDigits d = add_rational_mod1(gen_constant(2, 0), 1, 2, 16);
        CHECK(digit_string(d) == "1000000000000000");
    }
    SUBCASE("1/4 + 1/3 = 7/12") {
        SymbolSequence x = SymbolSequence::from_string(2, std::string("01") + std::string(70, '0'));
        CertifiedDigits d = add_rational_mod1(x, 1, 3, 20);
        CHECK(d.certified_count == 20);
        CHECK(digit_string(d) == rational_digits(7, 12, 2, 20));
        CHECK(digit_string(d).substr(0, 8) == "10010101");
    }
    SUBCASE("negative p reduces mod 1") {
        CertifiedDigits d = add_rational_mod1(gen_constant(2, 0), -1, 4, 8);
        CHECK(digit_string(d) == "11000000");  // -1/4 mod 1 = 3/4
    }
    SUBCASE("wrap past 1") {
        // 3/4 + 1/2 = 5/4 -> 1/4
        SymbolSequence x = SymbolSequence::from_string(2, std::string("11") + std::string(70, '0'));
        CertifiedDigits d = add_rational_mod1(x, 1, 2, 8);
        CHECK(digit_string(d) == "01000000");
    }
}

TEST_CASE("certification") {
    SUBCASE("near-boundary products stall until the carry resolves") {
        // x = 0.0101010... (1/3); 3 * 1/3 = 1 = 0 mod 1, but every finite
        // prefix leaves the wraparound unresolved.
        SymbolSequence third = gen_periodic(2, {0, 1});
        CertifiedDigits d = multiply_mod1(third, 3, 16, 200);
        CHECK(d.certified_count < 16);
        CHECK(!d.diagnostic.empty());
    }
    SUBCASE("certified digits are stable under prefix extension") {
        std::mt19937 rng(77);
        SymbolSequence full = gen_champernowne(2);
        auto digits = full.prefix(4096);
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t cut = 64 + rng() % 2000;
            std::vector<std::uint8_t> head(digits.begin(),
                                           digits.begin() + static_cast<std::ptrdiff_t>(cut));
            std::uint64_t m = 2 + rng() % 30;
            CertifiedDigits shorter =
                multiply_mod1(SymbolSequence::from_digits(2, head), m, 256, 4096);
            CertifiedDigits longer = multiply_mod1(full, m, 256, 4096);
            REQUIRE(longer.certified_count >= shorter.certified_count);
            for (std::size_t i = 0; i < shorter.certified_count; ++i)
                CHECK(shorter.digits[i] == longer.digits[i]);
        }
    }
    SUBCASE("composed multiplications agree on the common certified range") {
        SymbolSequence x = gen_champernowne(2);
        CertifiedDigits once = multiply_mod1(x, 6, 512);
        CertifiedDigits first = multiply_mod1(x, 2, 1024);
        CertifiedDigits second = multiply_mod1(first.to_sequence(), 3, 512, 1024);
        std::size_t common = std::min(once.certified_count, second.certified_count);
        CHECK(common >= 256);
        for (std::size_t i = 0; i < common; ++i) CHECK(once.digits[i] == second.digits[i]);
    }
}

TEST_CASE("weyl phase identity under integer multiplication") {
    // S_n(k; m r) = S_n(mk; r) up to truncation and float error
    SymbolSequence x = gen_diluted(gen_champernowne(2), DilutionPattern::parse("0*", 2));
    const std::uint64_t n = 1 << 14;
    CertifiedDigits d = multiply_mod1(x, 5, static_cast<std::size_t>(n) + 128);
    REQUIRE(d.certified_count >= n + 63);
    SymbolSequence x5 = d.to_sequence();
    for (long long k : {1, 2, 3}) {
        std::complex<double> lhs = weyl_partial_average(x5, k, n, 64);
        std::complex<double> rhs = weyl_partial_average(x, 5 * k, n, 64);
        CHECK(std::abs(lhs - rhs) < 1e-8);
    }
}

TEST_CASE("preservation report") {
    SymbolSequence x = gen_diluted(gen_champernowne(2), DilutionPattern::parse("0*", 2));
    SUBCASE("q = 1 gives exactly zero gaps") {
        PreservationReport rep = preservation_report(x, 1, 1, {2, 4}, 1 << 14);
        CHECK(rep.dim_lo_gap == 0.0);
        CHECK(rep.dim_hi_gap == 0.0);
    }
    SUBCASE("q = 3 keeps the dimension profile close") {
        PreservationReport rep = preservation_report(x, 3, 1, {2, 4, 8}, 1 << 16);
        CHECK(rep.dim_lo_gap <= 0.08);
    }
    SUBCASE("q = 5/3 on a normal value keeps all profiles high") {
        PreservationReport rep =
            preservation_report(gen_champernowne(2), 5, 3, {1, 2, 4, 8}, 1 << 17);
        CHECK(rep.r.dim_lo >= 0.9);
        CHECK(rep.qr.dim_lo >= 0.9);
        CHECK(rep.q_plus_r.dim_lo >= 0.9);
    }
}
