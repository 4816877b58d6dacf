#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace syncorr {

/// Outcome of one reproducible end-to-end check.
struct CheckResult {
    std::string name;      // short stable identifier
    std::string claim;     // what the check asserts
    std::string computed;  // what this run produced
    bool pass = false;
    double seconds = 0.0;
};

inline constexpr std::uint64_t kDefaultReproduceSeed = 424242;

/// Runs every built-in check. Deterministic for a fixed seed: every random
/// draw uses a generator split per sample, so results do not depend on the
/// order in which checks execute.
std::vector<CheckResult> run_all_checks(std::uint64_t seed = kDefaultReproduceSeed);

/// Fixed-width table of results suitable for terminal output.
std::string format_check_table(const std::vector<CheckResult>& results);

}  // namespace syncorr
