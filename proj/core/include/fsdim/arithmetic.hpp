#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsdim/dimension.hpp"
#include "fsdim/sequence.hpp"

namespace fsdim {

/// Digits of a transformed number together with a certification watermark:
/// the first `certified_count` digits are guaranteed to equal the true
/// base-b expansion of the transformed value, no matter how the input
/// stream continues. Extending the input prefix never changes certified
/// digits.
struct CertifiedDigits {
    int base = 2;
    std::vector<std::uint8_t> digits;
    std::size_t certified_count = 0;
    std::size_t input_digits_used = 0;
    std::string diagnostic;  // nonempty when the certification horizon was hit

    SymbolSequence to_sequence() const;
};

/// First `want` digits of (m * v_b(x)) mod 1 via exact integer arithmetic on
/// an input prefix of length N. A digit is certified once the uncertainty
/// interval of width m * b^-N cannot cross its digit boundary; N is extended
/// (doubling) until `want` digits certify or `horizon` input digits were
/// consumed. horizon = 0 selects the default 4 * want + 64.
CertifiedDigits multiply_mod1(const SymbolSequence& x, std::uint64_t m, std::size_t want,
                              std::size_t horizon = 0);

/// Digits of (v_b(x) + p/q) mod 1 under the same certification contract
/// (uncertainty width b^-N).
CertifiedDigits add_rational_mod1(const SymbolSequence& x, std::int64_t p, std::uint64_t q,
                                  std::size_t want, std::size_t horizon = 0);

/// Dimension-preservation report for rational arithmetic: profiles of r,
/// q*r and q+r for q = s/t. The multiplication profile is computed on the
/// digits of (s*r) mod 1 -- by the integer-multiplication reduction these
/// share their finite-state dimensions with q*r -- and the addition profile
/// on the streamed digits of r + s/t.
struct PreservationReport {
    DimensionEstimate r;
    DimensionEstimate qr;
    DimensionEstimate q_plus_r;
    double dim_lo_gap = 0.0;  // max pairwise |dim_lo| difference at largest l
    double dim_hi_gap = 0.0;
};

PreservationReport preservation_report(const SymbolSequence& x, std::uint64_t q_num,
                                       std::uint64_t q_den, std::vector<int> block_lengths,
                                       std::uint64_t n, CountMode mode = CountMode::disjoint);

}  // namespace fsdim
