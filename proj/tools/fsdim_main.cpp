// fsdim: finite-state dimension toolkit command line.
//
// Subcommands: generate, entropy, weyl, dims, measure, arith, gamble, repro.
// Exit codes: 0 success, 2 validation error, 3 computation error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "fsdim/arithmetic.hpp"
#include "fsdim/block_distribution.hpp"
#include "fsdim/dimension.hpp"
#include "fsdim/gambler.hpp"
#include "fsdim/generators.hpp"
#include "fsdim/io.hpp"
#include "fsdim/renyi.hpp"
#include "fsdim/repro.hpp"
#include "fsdim/version.hpp"
#include "fsdim/weyl.hpp"

namespace {

using nlohmann::json;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stoi(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError("empty list");
    return out;
}

// "1..8" or "-4..4" or a comma list.
std::vector<long long> parse_k_set(const std::string& text) {
    std::size_t dots = text.find("..");
    std::vector<long long> out;
    if (dots != std::string::npos) {
        long long lo = std::stoll(text.substr(0, dots));
        long long hi = std::stoll(text.substr(dots + 2));
        if (hi < lo) throw CLI::ValidationError("bad k range");
        for (long long k = lo; k <= hi; ++k) out.push_back(k);
    } else {
        for (int v : parse_int_list(text)) out.push_back(v);
    }
    return out;
}

std::vector<std::uint64_t> resolve_checkpoints(const std::string& spec, std::uint64_t n,
                                               std::uint64_t min_first) {
    if (spec == "geometric")
        return fsdim::geometric_checkpoints(std::max<std::uint64_t>(min_first, n / 8), n);
    if (spec == "final") return {n};
    std::vector<std::uint64_t> cps;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        cps.push_back(std::stoull(spec.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (cps.empty()) throw CLI::ValidationError("empty checkpoint list");
    return cps;
}

json report_header(const std::string& subcommand, const json& config) {
    return json{{"tool", "fsdim"}, {"version", fsdim::kVersion}, {"subcommand", subcommand},
                {"config", config}};
}

void emit_json(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

json estimate_to_json(const fsdim::DimensionEstimate& est) {
    json tails = json::array();
    for (std::size_t i = 0; i < est.tails.size(); ++i)
        tails.push_back({{"l", est.block_lengths[i]},
                         {"tail_min", est.tails[i].min},
                         {"tail_max", est.tails[i].max}});
    return json{{"base", est.base},
                {"mode", est.mode == fsdim::CountMode::sliding ? "sliding" : "disjoint"},
                {"block_lengths", est.block_lengths},
                {"checkpoints", est.checkpoints},
                {"entropy", est.entropy},
                {"burn_in_fraction", est.burn_in_fraction},
                {"tails", tails},
                {"dim_lo", est.dim_lo},
                {"dim_hi", est.dim_hi}};
}

int run(int argc, char** argv) {
    CLI::App app{"finite-state dimension toolkit"};
    app.require_subcommand(1);
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    app.add_option("--threads", threads, "worker threads (results are thread-count invariant)");

    // ---- generate ----
    auto* gen = app.add_subcommand("generate", "write digits of a constructed sequence");
    std::string gen_kind, gen_out, gen_pattern = "0*", gen_pat_odd = "0*0*", gen_pat_even = "0**0";
    std::string gen_donor = "champernowne", gen_measure_path, gen_period = "01";
    int gen_base = 2, gen_stages = 8, gen_depth = 5;
    std::uint64_t gen_n = 0, gen_first = 1024, gen_ratio = 4, gen_align = 4;
    bool gen_asymptotic_schedule = false;
    gen->add_option("kind", gen_kind,
                    "champernowne | diluted | alternating | muchampernowne | constant | periodic")
        ->required();
    gen->add_option("--base", gen_base, "digit base");
    gen->add_option("--n", gen_n, "number of digits to emit")->required();
    gen->add_option("-o,--out", gen_out, "output digits file")->required();
    gen->add_option("--pattern", gen_pattern, "dilution pattern, '*' = wildcard");
    gen->add_option("--pat-odd", gen_pat_odd, "odd-stage pattern");
    gen->add_option("--pat-even", gen_pat_even, "even-stage pattern");
    gen->add_option("--donor", gen_donor, "wildcard donor: champernowne | balanced | file:PATH");
    gen->add_option("--stages", gen_stages, "alternating/muchampernowne stage count");
    gen->add_option("--first", gen_first, "first stage length");
    gen->add_option("--ratio", gen_ratio, "geometric stage ratio");
    gen->add_option("--alignment", gen_align, "stage ends rounded up to this multiple");
    gen->add_option("--measure", gen_measure_path, "measure spec JSON (muchampernowne)");
    gen->add_option("--depth", gen_depth, "muchampernowne desk-schedule max depth");
    gen->add_flag("--asymptotic-schedule", gen_asymptotic_schedule,
                  "use the super-exponential Bernoulli schedule (small stage counts only)");
    gen->add_option("--period", gen_period, "periodic generator digits");

    // ---- entropy ----
    auto* ent = app.add_subcommand("entropy", "block entropy matrix over checkpoints");
    std::string ent_input, ent_mode = "sliding", ent_l = "1,2,4,8", ent_cps = "geometric",
                ent_json;
    std::uint64_t ent_n = 0;
    double ent_burn = 0.5;
    bool ent_restricted = false;
    ent->add_option("-i,--input", ent_input, "digits file")->required();
    ent->add_option("--mode", ent_mode, "sliding | disjoint");
    ent->add_option("--l", ent_l, "block lengths, comma separated");
    ent->add_option("--n", ent_n, "prefix length (default: whole file)");
    ent->add_option("--checkpoints", ent_cps, "geometric | final | comma list");
    ent->add_option("--burn-in", ent_burn, "tail burn-in fraction");
    ent->add_flag("--restricted", ent_restricted, "also report constant-block-excluded entropies");
    ent->add_option("--json", ent_json, "report path (default stdout)");

    // ---- dims ----
    auto* dims = app.add_subcommand("dims", "finite-n dimension estimate");
    std::string dims_input, dims_l = "1,2,4,8", dims_mode = "sliding", dims_json;
    std::uint64_t dims_n = 0;
    dims->add_option("-i,--input", dims_input, "digits file")->required();
    dims->add_option("--l", dims_l, "block lengths");
    dims->add_option("--mode", dims_mode, "sliding | disjoint");
    dims->add_option("--n", dims_n, "prefix length (default: whole file)");
    dims->add_option("--json", dims_json, "report path (default stdout)");

    // ---- weyl ----
    auto* weyl = app.add_subcommand("weyl", "partial Weyl averages per frequency");
    std::string weyl_input, weyl_k = "1..8", weyl_cps = "geometric", weyl_csv, weyl_json;
    std::uint64_t weyl_n = 0;
    int weyl_depth = 64;
    weyl->add_option("-i,--input", weyl_input, "digits file")->required();
    weyl->add_option("--k", weyl_k, "frequencies: a..b or comma list");
    weyl->add_option("--n", weyl_n, "prefix length (default: whole file minus depth)");
    weyl->add_option("--checkpoints", weyl_cps, "geometric | final | comma list");
    weyl->add_option("--depth", weyl_depth, "evaluation truncation depth K");
    weyl->add_option("--csv", weyl_csv, "CSV path (columns k,n,re,im,err_bound)");
    weyl->add_option("--json", weyl_json, "JSON report path");

    // ---- measure ----
    auto* meas = app.add_subcommand("measure", "closed-form measure reports");
    std::string meas_spec, meas_json, meas_k, meas_invariance;
    std::string meas_depths = "1,2,4,8,12";
    int meas_fourier_depth = 20, meas_renyi = 0, meas_push = 0;
    meas->add_option("--spec", meas_spec, "measure spec JSON file")->required();
    meas->add_option("--fourier-k", meas_k, "Fourier frequencies: a..b or comma list");
    meas->add_option("--fourier-depth", meas_fourier_depth, "cylinder depth for Fourier sums");
    meas->add_option("--renyi", meas_renyi, "partition factor for a Renyi profile");
    meas->add_option("--depths", meas_depths, "depths for profiles");
    meas->add_option("--pushforward", meas_push, "report on (f_m)* of the spec measure");
    meas->add_option("--invariance", meas_invariance, "partition invariance check: m1,m2,l");
    meas->add_option("--json", meas_json, "report path (default stdout)");

    // ---- arith ----
    auto* arith = app.add_subcommand("arith", "streaming digit arithmetic mod 1");
    std::string arith_input, arith_out, arith_add, arith_json;
    std::uint64_t arith_mul = 0, arith_want = 0, arith_horizon = 0;
    arith->add_option("-i,--input", arith_input, "digits file")->required();
    arith->add_option("--mul", arith_mul, "multiply by a positive integer");
    arith->add_option("--add", arith_add, "add a rational p/q");
    arith->add_option("--want", arith_want, "digits requested")->required();
    arith->add_option("--horizon", arith_horizon, "input-digit horizon (default 4*want+64)");
    arith->add_option("-o,--out", arith_out, "output digits file (certified digits only)");
    arith->add_option("--json", arith_json, "certification report path");

    // ---- gamble ----
    auto* gam = app.add_subcommand("gamble", "finite-state gambler s-gale evaluation");
    std::string gam_spec, gam_input, gam_json, gam_cps = "geometric";
    double gam_s = 1.0, gam_threshold = 20.0;
    std::uint64_t gam_n = 0;
    gam->add_option("--gambler", gam_spec, "gambler spec JSON")->required();
    gam->add_option("-i,--input", gam_input, "digits file")->required();
    gam->add_option("--s", gam_s, "gale exponent s");
    gam->add_option("--n", gam_n, "prefix length (default: whole file)");
    gam->add_option("--checkpoints", gam_cps, "geometric | final | comma list");
    gam->add_option("--threshold", gam_threshold, "log2-capital success threshold");
    gam->add_option("--json", gam_json, "report path (default stdout)");

    // ---- repro ----
    auto* rep = app.add_subcommand("repro", "run the acceptance experiments");
    std::vector<std::string> rep_cases;
    std::string rep_json;
    rep->add_option("--case", rep_cases, "case id or alias (repeatable; default all)");
    rep->add_option("--json", rep_json, "machine-readable results path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version vs. usage error
    }

    if (gen->parsed()) {
        auto donor = [&]() -> fsdim::SymbolSequence {
            if (gen_donor == "champernowne") return fsdim::gen_champernowne(gen_base);
            if (gen_donor == "balanced") {
                fsdim::MuChampernowneSchedule s;
                for (int l = 1; l <= 26; ++l) {
                    s.repetition_factors.push_back(std::pow(2.0, l));
                    s.block_repeats.push_back(1);
                }
                s.string_order = fsdim::StringOrder::complement_paired;
                return fsdim::gen_mu_champernowne(
                    fsdim::AnalyticMeasure::bernoulli({0.5, 0.5}), s);
            }
            if (gen_donor.rfind("file:", 0) == 0)
                return fsdim::read_digits_file(gen_donor.substr(5));
            throw CLI::ValidationError("unknown donor '" + gen_donor + "'");
        };
        fsdim::SymbolSequence x = [&]() -> fsdim::SymbolSequence {
            if (gen_kind == "champernowne") return fsdim::gen_champernowne(gen_base);
            if (gen_kind == "constant") return fsdim::gen_constant(gen_base, 0);
            if (gen_kind == "periodic") {
                std::vector<std::uint8_t> period;
                for (char c : gen_period) period.push_back(static_cast<std::uint8_t>(c - '0'));
                return fsdim::gen_periodic(gen_base, period);
            }
            if (gen_kind == "diluted")
                return fsdim::gen_diluted(donor(),
                                          fsdim::DilutionPattern::parse(gen_pattern, gen_base));
            if (gen_kind == "alternating")
                return fsdim::gen_alternating(
                    fsdim::DilutionPattern::parse(gen_pat_odd, gen_base),
                    fsdim::DilutionPattern::parse(gen_pat_even, gen_base), donor(),
                    fsdim::StageSchedule::geometric(gen_first, gen_ratio, gen_stages, gen_align));
            if (gen_kind == "muchampernowne") {
                if (gen_measure_path.empty())
                    throw CLI::ValidationError("muchampernowne requires --measure");
                fsdim::AnalyticMeasure mu = fsdim::read_measure_json(gen_measure_path);
                fsdim::MuChampernowneSchedule sched =
                    gen_asymptotic_schedule
                        ? fsdim::MuChampernowneSchedule::asymptotic_bernoulli(
                              mu.bernoulli_probs().back(), gen_stages)
                        : fsdim::MuChampernowneSchedule::desk(mu, gen_depth, gen_n);
                return fsdim::gen_mu_champernowne(mu, sched);
            }
            throw CLI::ValidationError("unknown generator '" + gen_kind + "'");
        }();
        fsdim::write_digits_file(gen_out, x, gen_n);
        return 0;
    }

    if (ent->parsed() || dims->parsed()) {
        const bool full = ent->parsed();
        fsdim::SymbolSequence x = fsdim::read_digits_file(full ? ent_input : dims_input);
        std::uint64_t n = full ? ent_n : dims_n;
        if (n == 0) n = x.ensure(std::size_t(-1) / 2);  // whole finite file
        std::vector<int> ls = parse_int_list(full ? ent_l : dims_l);
        std::string mode_s = full ? ent_mode : dims_mode;
        fsdim::CountMode mode =
            mode_s == "disjoint" ? fsdim::CountMode::disjoint : fsdim::CountMode::sliding;
        auto cps = resolve_checkpoints(full ? ent_cps : "geometric", n,
                                       static_cast<std::uint64_t>(*std::max_element(ls.begin(), ls.end())));
        fsdim::DimensionEstimate est =
            fsdim::dimension_profile(x, ls, cps, mode, full ? ent_burn : 0.5);
        json config{{"input", full ? ent_input : dims_input}, {"n", n}, {"mode", mode_s},
                    {"l", ls}};
        json out = report_header(full ? "entropy" : "dims", config);
        out["estimate"] = estimate_to_json(est);
        if (full && ent_restricted) {
            json restricted = json::array();
            for (int l : ls) {
                fsdim::BlockDistribution d = mode == fsdim::CountMode::sliding
                                                 ? fsdim::sliding_distribution(x, n, l)
                                                 : fsdim::disjoint_distribution(x, n, l);
                restricted.push_back({{"l", l}, {"value", fsdim::restricted_entropy(d)}});
            }
            out["restricted_entropy"] = restricted;
        }
        emit_json(out, full ? ent_json : dims_json);
        return 0;
    }

    if (weyl->parsed()) {
        fsdim::SymbolSequence x = fsdim::read_digits_file(weyl_input);
        std::uint64_t n = weyl_n;
        if (n == 0) {
            std::uint64_t have = x.ensure(std::size_t(-1) / 2);
            if (have < static_cast<std::uint64_t>(weyl_depth))
                throw CLI::ValidationError("input shorter than --depth");
            n = have - static_cast<std::uint64_t>(weyl_depth) + 1;
        }
        std::vector<long long> ks = parse_k_set(weyl_k);
        auto cps = resolve_checkpoints(weyl_cps, n, 64);
        auto series = fsdim::weyl_series(x, ks, cps, weyl_depth, threads);
        json config{{"input", weyl_input}, {"k", ks}, {"n", n}, {"depth", weyl_depth},
                    {"checkpoints", cps}};
        if (!weyl_csv.empty()) {
            std::ofstream csv(weyl_csv);
            if (!csv) throw std::runtime_error("cannot open " + weyl_csv);
            csv << "k,n,re,im,err_bound\n";
            csv.precision(17);
            for (const auto& s : series)
                for (std::size_t i = 0; i < s.values.size(); ++i)
                    csv << s.k << "," << s.checkpoints[i] << "," << s.values[i].real() << ","
                        << s.values[i].imag() << "," << s.error_bounds[i] << "\n";
        }
        if (!weyl_json.empty() || weyl_csv.empty()) {
            json out = report_header("weyl", config);
            json rows = json::array();
            for (const auto& s : series)
                for (std::size_t i = 0; i < s.values.size(); ++i)
                    rows.push_back({{"k", s.k},
                                    {"n", s.checkpoints[i]},
                                    {"re", s.values[i].real()},
                                    {"im", s.values[i].imag()},
                                    {"err_bound", s.error_bounds[i]}});
            out["series"] = rows;
            emit_json(out, weyl_json);
        }
        return 0;
    }

    if (meas->parsed()) {
        fsdim::AnalyticMeasure mu = fsdim::read_measure_json(meas_spec);
        if (meas_push > 0) mu = fsdim::pushforward_integer(mu, meas_push);
        json config{{"spec", meas_spec}, {"pushforward", meas_push}};
        json out = report_header("measure", config);
        if (!meas_k.empty()) {
            json rows = json::array();
            for (long long k : parse_k_set(meas_k)) {
                double err = 0.0;
                std::complex<double> c = fsdim::measure_fourier(mu, k, meas_fourier_depth, &err);
                rows.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}, {"err_bound", err}});
            }
            out["fourier"] = rows;
        }
        if (meas_renyi >= 2) {
            fsdim::RenyiProfile prof =
                fsdim::renyi_profile(mu, meas_renyi, parse_int_list(meas_depths));
            out["renyi"] = {{"partition_factor", prof.partition_factor},
                            {"depths", prof.depths},
                            {"values", prof.values},
                            {"tail_lo", prof.tail_lo},
                            {"tail_hi", prof.tail_hi}};
        }
        if (!meas_invariance.empty()) {
            std::vector<int> args = parse_int_list(meas_invariance);
            if (args.size() != 3) throw CLI::ValidationError("--invariance wants m1,m2,l");
            fsdim::InvarianceCheck ic =
                fsdim::check_partition_invariance(mu, args[0], args[1], args[2], 1e-9);
            out["invariance"] = {{"pass", ic.pass},
                                 {"matched_depth", ic.matched_depth},
                                 {"difference", ic.difference},
                                 {"bound", ic.bound}};
        }
        emit_json(out, meas_json);
        return 0;
    }

    if (arith->parsed()) {
        if ((arith_mul == 0) == arith_add.empty())
            throw CLI::ValidationError("exactly one of --mul / --add");
        fsdim::SymbolSequence x = fsdim::read_digits_file(arith_input);
        fsdim::CertifiedDigits digits;
        json config{{"input", arith_input}, {"want", arith_want}, {"horizon", arith_horizon}};
        if (arith_mul > 0) {
            digits = fsdim::multiply_mod1(x, arith_mul, arith_want, arith_horizon);
            config["mul"] = arith_mul;
        } else {
            std::size_t slash = arith_add.find('/');
            if (slash == std::string::npos) throw CLI::ValidationError("--add wants p/q");
            digits = fsdim::add_rational_mod1(x, std::stoll(arith_add.substr(0, slash)),
                                              std::stoull(arith_add.substr(slash + 1)), arith_want,
                                              arith_horizon);
            config["add"] = arith_add;
        }
        if (!arith_out.empty())
            fsdim::write_digits_file(arith_out, digits.to_sequence(), digits.certified_count);
        json out = report_header("arith", config);
        out["certified_count"] = digits.certified_count;
        out["input_digits_used"] = digits.input_digits_used;
        out["diagnostic"] = digits.diagnostic;
        emit_json(out, arith_json);
        return digits.certified_count >= arith_want ? 0 : 3;
    }

    if (gam->parsed()) {
        fsdim::Gambler g = fsdim::read_gambler_json(gam_spec);
        fsdim::SymbolSequence x = fsdim::read_digits_file(gam_input);
        std::uint64_t n = gam_n;
        if (n == 0) n = x.ensure(std::size_t(-1) / 2);
        auto cps64 = resolve_checkpoints(gam_cps, n, 16);
        std::vector<std::size_t> cps(cps64.begin(), cps64.end());
        fsdim::SuccessReport sr = fsdim::success_report(g, gam_s, x, cps, gam_threshold);
        fsdim::SgaleTrace trace = fsdim::sgale_evaluate(g, gam_s, x, static_cast<std::size_t>(n));
        json config{{"gambler", gam_spec}, {"s", gam_s}, {"n", n}};
        json out = report_header("gamble", config);
        json points = json::array();
        for (std::size_t cp : cps)
            points.push_back({{"n", cp}, {"log2_capital", trace.log2_capital[cp]}});
        out["trace"] = points;
        out["success"] = {{"tail_rate_min", sr.tail_rate_min},
                          {"tail_rate_max", sr.tail_rate_max},
                          {"final_log2_capital", sr.final_log2_capital},
                          {"verdict", sr.verdict}};
        emit_json(out, gam_json);
        return 0;
    }

    if (rep->parsed()) {
        auto results = fsdim::run_acceptance(rep_cases, threads);
        bool all_pass = true;
        for (const auto& res : results) {
            all_pass = all_pass && res.pass;
            std::printf("[%s] %s (%s): %s  [%.1fs]\n", res.pass ? "PASS" : "FAIL", res.id.c_str(),
                        res.alias.c_str(), res.details.c_str(), res.seconds);
        }
        std::printf("%zu/%zu criteria passed\n",
                    static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                                           [](const auto& r) { return r.pass; })),
                    results.size());
        if (!rep_json.empty()) {
            json rows = json::array();
            for (const auto& res : results)
                rows.push_back({{"id", res.id},
                                {"alias", res.alias},
                                {"pass", res.pass},
                                {"summary", res.summary},
                                {"details", res.details},
                                {"seconds", res.seconds}});
            json out = report_header("repro", json{{"cases", rep_cases}});
            out["results"] = rows;
            emit_json(out, rep_json);
        }
        return all_pass ? 0 : 3;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
