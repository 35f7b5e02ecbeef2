#include "fsdim/io.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fsdim {

namespace {

using nlohmann::json;

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AnalyticMeasure measure_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bernoulli") {
        return AnalyticMeasure::bernoulli(j.at("p").get<std::vector<double>>());
    }
    if (kind == "markov") {
        return AnalyticMeasure::markov(j.at("pi").get<std::vector<double>>(),
                                       j.at("P").get<std::vector<std::vector<double>>>());
    }
    if (kind == "pointmass") {
        int base = j.value("base", 2);
        return AnalyticMeasure::point_mass(
            SymbolSequence::from_string(base, j.at("digits").get<std::string>()));
    }
    if (kind == "pushforward") {
        return AnalyticMeasure::pushforward(measure_from_json(j.at("inner")),
                                            j.at("m").get<int>());
    }
    if (kind == "interval_lift") {
        return AnalyticMeasure::interval_lift(
            j.at("base").get<int>(), j.at("masses").get<std::vector<std::vector<double>>>());
    }
    throw std::invalid_argument("unknown measure kind '" + kind + "'");
}

}  // namespace

SymbolSequence read_digits_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    int base = 2;
    std::string first;
    std::streampos body_start = in.tellg();
    if (std::getline(in, first)) {
        if (first.rfind("#base:", 0) == 0) {
            base = std::stoi(first.substr(6));
            if (base < 2 || base > 10)
                throw std::runtime_error("digits file: base must be in 2..10");
            body_start = in.tellg();
        }
    }
    in.clear();
    in.seekg(body_start);
    std::vector<std::uint8_t> digits;
    char c;
    while (in.get(c)) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c < '0' || c >= '0' + base)
            throw std::runtime_error(std::string("digits file: invalid digit '") + c + "'");
        digits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return SymbolSequence::from_digits(base, std::move(digits));
}

void write_digits_file(const std::filesystem::path& path, const SymbolSequence& x,
                       std::uint64_t count) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "#base:" << x.base() << "\n";
    constexpr std::uint64_t kChunk = 1 << 16;
    constexpr std::uint64_t kLineWidth = 80;
    std::uint64_t emitted = 0;
    std::string line;
    line.reserve(kLineWidth + 1);
    while (emitted < count) {
        std::uint64_t upto = std::min(count, emitted + kChunk);
        std::span<const std::uint8_t> digits = x.prefix(static_cast<std::size_t>(upto));
        for (std::uint64_t i = emitted; i < upto; ++i) {
            line.push_back(static_cast<char>('0' + digits[static_cast<std::size_t>(i)]));
            if (line.size() == kLineWidth) {
                line.push_back('\n');
                out << line;
                line.clear();
            }
        }
        emitted = upto;
    }
    if (!line.empty()) {
        line.push_back('\n');
        out << line;
    }
    if (!out) throw std::runtime_error("short write to " + path.string());
}

AnalyticMeasure read_measure_json(const std::filesystem::path& path) {
    return parse_measure_json(slurp(path));
}

AnalyticMeasure parse_measure_json(const std::string& text) {
    return measure_from_json(json::parse(text));
}

Gambler read_gambler_json(const std::filesystem::path& path) {
    return parse_gambler_json(slurp(path));
}

Gambler parse_gambler_json(const std::string& text) {
    json j = json::parse(text);
    Gambler g;
    const auto delta = j.at("delta").get<std::vector<std::vector<int>>>();
    for (const auto& row : delta) {
        if (row.size() != 2) throw std::invalid_argument("gambler: delta rows need 2 entries");
        g.delta.push_back({row[0], row[1]});
    }
    if (j.contains("states") && j.at("states").get<int>() != g.states())
        throw std::invalid_argument("gambler: states field disagrees with delta");
    g.beta = j.at("beta").get<std::vector<double>>();
    g.start_state = j.value("q0", 0);
    g.initial_capital = j.value("c0", 1.0);
    g.validate();
    return g;
}

}  // namespace fsdim
