// Acceptance gate: one line per criterion, nonzero exit when any fail.

#include <cstdio>
#include <thread>

#include "fsdim/repro.hpp"

int main() {
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    auto results = fsdim::run_acceptance({}, threads);
    int failures = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failures;
        std::printf("[%s] %s (%s): %s\n        %s  [%.1fs]\n", r.pass ? "PASS" : "FAIL",
                    r.id.c_str(), r.alias.c_str(), r.summary.c_str(), r.details.c_str(),
                    r.seconds);
    }
    std::printf("%zu/%zu criteria passed\n", results.size() - static_cast<std::size_t>(failures),
                results.size());
    return failures == 0 ? 0 : 1;
}
