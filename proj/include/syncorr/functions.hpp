#pragma once

#include "syncorr/correlation.hpp"
#include "syncorr/errors.hpp"
#include "syncorr/scalar.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace syncorr {

/// Hard cap on m^n when enumerating all deterministic strategies.
inline constexpr std::uint64_t kFunctionEnumerationCap = 1u << 16;

/// All functions f : {0..n-1} -> {0..m-1} as value tables, ordered
/// lexicographically by (f(0), f(1), ..., f(n-1)).
std::vector<std::vector<int>> enumerate_functions(const GameShape& shape);

/// Stable index of a function table within enumerate_functions(shape):
/// sum of f(x) * m^(n-1-x).
std::uint64_t function_index(const std::vector<int>& f, const GameShape& shape);

/// A sparse probability distribution over deterministic strategies, keyed by
/// function index and kept sorted by index.
template <class S>
struct FunctionDistribution {
    GameShape shape;
    std::vector<std::pair<std::uint64_t, S>> weights;  // (function index, weight), index-sorted

    void validate(const S& tol = ScalarTraits<S>::default_tol()) const {
        S total(0);
        std::uint64_t prev = 0;
        bool first = true;
        for (const auto& [idx, w] : weights) {
            if (!first && idx <= prev) throw ParseError("function weights not sorted by index");
            prev = idx;
            first = false;
            if (w < S(0) && !within_tol(w, tol)) throw WeightSumViolation("negative weight");
            total += w;
        }
        if (!within_tol(S(total - S(1)), tol))
            throw WeightSumViolation("weights sum to " + std::to_string(to_double(total)));
    }
};

/// The classical correlation realized by sampling f ~ mu and letting both
/// players answer with f.
template <class S>
Correlation<S> correlation_from_distribution(const FunctionDistribution<S>& mu) {
    mu.validate();
    const GameShape& sh = mu.shape;
    std::vector<S> entries(static_cast<std::size_t>(sh.rows()) * sh.columns(), S(0));
    const auto tables = enumerate_functions(sh);
    for (const auto& [idx, w] : mu.weights) {
        if (idx >= tables.size()) throw ValueOutOfRange("function index out of range");
        const Correlation<S> c = from_function<S>(tables[idx], sh);
        for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += w * c.entries()[i];
    }
    return Correlation<S>(sh, std::move(entries));
}

}  // namespace syncorr
