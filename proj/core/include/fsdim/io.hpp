#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "fsdim/analytic_measure.hpp"
#include "fsdim/gambler.hpp"
#include "fsdim/sequence.hpp"

namespace fsdim {

/// Digits file: optional first line "#base:<b>", then ASCII digits with
/// whitespace ignored. Base defaults to 2 when no header is present.
SymbolSequence read_digits_file(const std::filesystem::path& path);

/// Streams `count` digits of x to a digits file, header included.
void write_digits_file(const std::filesystem::path& path, const SymbolSequence& x,
                       std::uint64_t count);

/// Measure spec, e.g. {"kind":"bernoulli","p":[0.7,0.3]},
/// {"kind":"markov","pi":[...],"P":[[...]]}, {"kind":"pointmass","digits":"010"},
/// {"kind":"pushforward","m":3,"inner":{...}}.
AnalyticMeasure read_measure_json(const std::filesystem::path& path);
AnalyticMeasure parse_measure_json(const std::string& text);

/// Gambler spec: {"states":k,"delta":[[...]],"beta":[...],"q0":0,"c0":1}.
Gambler read_gambler_json(const std::filesystem::path& path);
Gambler parse_gambler_json(const std::string& text);

}  // namespace fsdim
