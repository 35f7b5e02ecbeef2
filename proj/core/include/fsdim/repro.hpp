#pragma once

#include <string>
#include <vector>

namespace fsdim {

/// One acceptance-run criterion: a fixed experiment with pinned tolerances.
struct CriterionResult {
    std::string id;       // "c01".."c12"
    std::string alias;    // "normality", "lemma41", ...
    std::string summary;  // what was checked
    bool pass = false;
    std::string details;  // observed values
    double seconds = 0.0;
};

std::vector<std::string> acceptance_case_ids();

/// Runs one case by id or alias.
CriterionResult run_acceptance_case(const std::string& which, int threads = 1);

/// Runs the listed cases (all when empty), in order.
std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& which = {},
                                            int threads = 1);

}  // namespace fsdim
