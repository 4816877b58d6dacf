// Standalone acceptance gate: one line per end-to-end check, nonzero exit on
// any failure. The checks (and their tolerances and time budgets) live in the
// library so the CLI's `reproduce` subcommand runs exactly the same code.
#include "syncorr/reproduce.hpp"

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    std::uint64_t seed = syncorr::kDefaultReproduceSeed;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::cerr << "usage: syncorr_acceptance [--seed N]\n";
            return 2;
        }
    }

    const auto results = syncorr::run_all_checks(seed);
    bool all = true;
    std::size_t idx = 0;
    for (const auto& r : results) {
        ++idx;
        std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << idx << " [" << r.name
                  << "] claim: " << r.claim << " | computed: " << r.computed << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    return all ? 0 : 1;
}
