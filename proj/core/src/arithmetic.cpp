#include "fsdim/arithmetic.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsdim {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Input prefix as an integer A = sum x_i b^(N-1-i); v(x) lies in
// [A, A+1) / b^N.
BigInt pack_prefix(std::span<const std::uint8_t> digits, int base) {
    BigInt a = 0;
    if (base == 2) {
        // bit-import, most significant digit first
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i]) bit_set(a, static_cast<unsigned>(digits.size() - 1 - i));
        }
        return a;
    }
    // batch digits so each step is one limb multiply
    int group = 1;
    std::uint64_t chunk = static_cast<std::uint64_t>(base);
    while (chunk <= (std::uint64_t{1} << 57) / static_cast<std::uint64_t>(base)) {
        chunk *= static_cast<std::uint64_t>(base);
        ++group;
    }
    std::size_t i = 0;
    while (i < digits.size()) {
        std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(group), digits.size() - i);
        std::uint64_t packed = 0;
        std::uint64_t scale = 1;
        for (std::size_t j = 0; j < take; ++j) {
            packed = packed * static_cast<std::uint64_t>(base) + digits[i + j];
            scale *= static_cast<std::uint64_t>(base);
        }
        a = a * scale + packed;
        i += take;
    }
    return a;
}

BigInt big_pow(int base, std::size_t e) {
    BigInt p = 1;
    BigInt b = base;
    while (e) {
        if (e & 1) p *= b;
        b *= b;
        e >>= 1;
    }
    return p;
}

// Base-b digit string of `value` padded to `width` digits, MSB first.
std::vector<std::uint8_t> big_digits(BigInt value, int base, std::size_t width) {
    std::vector<std::uint8_t> out(width, 0);
    if (base == 2) {
        for (std::size_t i = 0; i < width && !value.is_zero(); ++i) {
            if (bit_test(value, static_cast<unsigned>(i))) out[width - 1 - i] = 1;
        }
        return out;
    }
    std::size_t pos = width;
    while (!value.is_zero() && pos > 0) {
        BigInt q, r;
        divide_qr(value, BigInt(base), q, r);
        out[--pos] = static_cast<std::uint8_t>(r.convert_to<unsigned>());
        value = std::move(q);
    }
    return out;
}

std::size_t common_prefix(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return i;
    return n;
}

// Certified digits of a value known to lie in [lo, lo + width) / den where
// den = q * b^N: the digit prefix at depth d is determined exactly when
// floor(lo b^d / den) == floor((lo + width - 1) b^d / den). Returns digits
// to depth `want` plus the certified count.
struct IntervalDigits {
    std::vector<std::uint8_t> digits;
    std::size_t certified;
};

IntervalDigits interval_digits(const BigInt& lo, const BigInt& width, const BigInt& den, int base,
                               std::size_t want) {
    const BigInt scale = big_pow(base, want);
    BigInt lo_scaled = lo * scale / den;
    BigInt hi_scaled = (lo + width - 1) * scale / den;
    std::vector<std::uint8_t> lo_digits = big_digits(lo_scaled, base, want);
    std::vector<std::uint8_t> hi_digits = big_digits(hi_scaled, base, want);
    IntervalDigits out;
    out.certified = common_prefix(lo_digits, hi_digits);
    out.digits = std::move(lo_digits);
    return out;
}

std::size_t resolve_horizon(std::size_t want, std::size_t horizon) {
    return horizon != 0 ? horizon : 4 * want + 64;
}

}  // namespace

SymbolSequence CertifiedDigits::to_sequence() const {
    return SymbolSequence::from_digits(
        base, std::vector<std::uint8_t>(digits.begin(),
                                        digits.begin() + static_cast<std::ptrdiff_t>(certified_count)));
}

CertifiedDigits multiply_mod1(const SymbolSequence& x, std::uint64_t m, std::size_t want,
                              std::size_t horizon) {
    if (m == 0) throw std::invalid_argument("multiply_mod1: m must be >= 1");
    if (want == 0) throw std::invalid_argument("multiply_mod1: want must be >= 1");
    const int base = x.base();
    horizon = resolve_horizon(want, horizon);

    std::size_t mul_digits = 1;
    for (std::uint64_t v = m; v >= static_cast<std::uint64_t>(base); v /= static_cast<std::uint64_t>(base))
        ++mul_digits;
    std::size_t n = std::min(horizon, want + mul_digits + 16);

    CertifiedDigits result;
    result.base = base;
    for (;;) {
        std::size_t got = x.ensure(n);
        bool exhausted = got < n;
        std::span<const std::uint8_t> digits = x.prefix(got);
        const BigInt bN = big_pow(base, got);
        BigInt r = pack_prefix(digits, base) * m % bN;
        IntervalDigits id = interval_digits(r, BigInt(m), bN, base, want);
        result.digits = std::move(id.digits);
        result.certified_count = std::min(id.certified, want);
        result.input_digits_used = got;
        if (result.certified_count >= want) return result;
        if (exhausted) {
            result.diagnostic = "input exhausted after " + std::to_string(got) + " digits; " +
                                std::to_string(result.certified_count) + "/" +
                                std::to_string(want) + " digits certified";
            return result;
        }
        if (n >= horizon) {
            result.diagnostic =
                "certification horizon (" + std::to_string(horizon) +
                " input digits) reached; the prefix is indistinguishable from a point whose "
                "product has a terminating expansion";
            return result;
        }
        n = std::min(horizon, n * 2);
    }
}

CertifiedDigits add_rational_mod1(const SymbolSequence& x, std::int64_t p, std::uint64_t q,
                                  std::size_t want, std::size_t horizon) {
    if (q == 0) throw std::invalid_argument("add_rational_mod1: q must be >= 1");
    if (want == 0) throw std::invalid_argument("add_rational_mod1: want must be >= 1");
    const int base = x.base();
    horizon = resolve_horizon(want, horizon);
    // reduce p/q to [0, 1)
    std::int64_t pm = p % static_cast<std::int64_t>(q);
    if (pm < 0) pm += static_cast<std::int64_t>(q);

    std::size_t n = std::min(horizon, want + 16);
    CertifiedDigits result;
    result.base = base;
    for (;;) {
        std::size_t got = x.ensure(n);
        bool exhausted = got < n;
        std::span<const std::uint8_t> digits = x.prefix(got);
        const BigInt bN = big_pow(base, got);
        const BigInt den = BigInt(q) * bN;
        // value in [B, B + q) / (q b^N)
        BigInt b_lo = (pack_prefix(digits, base) * q + BigInt(pm) * bN) % den;
        IntervalDigits id = interval_digits(b_lo, BigInt(q), den, base, want);
        result.digits = std::move(id.digits);
        result.certified_count = std::min(id.certified, want);
        result.input_digits_used = got;
        if (result.certified_count >= want) return result;
        if (exhausted) {
            result.diagnostic = "input exhausted after " + std::to_string(got) + " digits; " +
                                std::to_string(result.certified_count) + "/" +
                                std::to_string(want) + " digits certified";
            return result;
        }
        if (n >= horizon) {
            result.diagnostic =
                "certification horizon (" + std::to_string(horizon) +
                " input digits) reached; the prefix is indistinguishable from a point whose "
                "sum has a terminating expansion";
            return result;
        }
        n = std::min(horizon, n * 2);
    }
}

PreservationReport preservation_report(const SymbolSequence& x, std::uint64_t q_num,
                                       std::uint64_t q_den, std::vector<int> block_lengths,
                                       std::uint64_t n, CountMode mode) {
    if (q_num == 0 || q_den == 0)
        throw std::invalid_argument("preservation_report: q must be a positive rational");
    std::sort(block_lengths.begin(), block_lengths.end());
    const std::size_t want = static_cast<std::size_t>(n) + static_cast<std::size_t>(block_lengths.back());

    CertifiedDigits mul = multiply_mod1(x, q_num, want);
    if (mul.certified_count < want)
        throw std::runtime_error("preservation_report: multiplication certification failed: " +
                                 mul.diagnostic);
    CertifiedDigits add = add_rational_mod1(x, static_cast<std::int64_t>(q_num), q_den, want);
    if (add.certified_count < want)
        throw std::runtime_error("preservation_report: addition certification failed: " +
                                 add.diagnostic);

    std::vector<std::uint64_t> checkpoints = geometric_checkpoints(
        std::max<std::uint64_t>(static_cast<std::uint64_t>(block_lengths.back()), n / 8), n);

    PreservationReport report;
    report.r = dimension_profile(x, block_lengths, checkpoints, mode);
    report.qr = dimension_profile(mul.to_sequence(), block_lengths, checkpoints, mode);
    report.q_plus_r = dimension_profile(add.to_sequence(), block_lengths, checkpoints, mode);

    auto gap3 = [](double a, double b, double c) {
        return std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)});
    };
    report.dim_lo_gap = gap3(report.r.dim_lo, report.qr.dim_lo, report.q_plus_r.dim_lo);
    report.dim_hi_gap = gap3(report.r.dim_hi, report.qr.dim_hi, report.q_plus_r.dim_hi);
    return report;
}

}  // namespace fsdim
