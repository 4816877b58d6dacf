#pragma once

#include "syncorr/correlation.hpp"
#include "syncorr/errors.hpp"
#include "syncorr/functions.hpp"
#include "syncorr/rational_linalg.hpp"
#include "syncorr/scalar.hpp"
#include "syncorr/simplex.hpp"

#include <optional>
#include <vector>

namespace syncorr {

/// A linear functional on correlations, evaluated entrywise against the dense
/// row-major storage, together with the bound it satisfies on every
/// deterministic vertex.
template <class S>
struct SeparatingFunctional {
    std::vector<S> coefficients;  // length m^2 * n^2
    S bound{};
    S margin{};  // value(p) - bound > 0 on the separated input

    S value(const Correlation<S>& p) const {
        if (coefficients.size() != p.entries().size())
            throw DimensionMismatch("functional length does not match correlation");
        S s(0);
        for (std::size_t i = 0; i < coefficients.size(); ++i)
            s += coefficients[i] * p.entries()[i];
        return s;
    }
};

enum class Verdict { Classical, NotClassical };

template <class S>
struct ClassicalCertificate {
    Verdict verdict = Verdict::NotClassical;
    std::optional<FunctionDistribution<S>> distribution;      // when classical
    std::optional<SeparatingFunctional<S>> functional;        // when not classical
};

/// Decides whether a synchronous correlation is a mixture of deterministic
/// same-function strategies, returning either a reproducing distribution or a
/// verified separating functional. Rational mode is exact end to end.
template <class S>
ClassicalCertificate<S> classical_membership(const Correlation<S>& p,
                                             const S& tol = ScalarTraits<S>::default_tol()) {
    const GameShape& sh = p.shape();
    {
        const auto sync = is_synchronous(p, tol);
        if (!sync.ok) throw NotSynchronous("membership is defined for synchronous correlations only");
    }
    const auto tables = enumerate_functions(sh);
    const std::size_t dim = p.entries().size();

    std::vector<std::vector<S>> columns;
    columns.reserve(tables.size());
    std::vector<Correlation<S>> vertices;
    vertices.reserve(tables.size());
    for (const auto& f : tables) {
        vertices.push_back(from_function<S>(f, sh));
        std::vector<S> col = vertices.back().entries();
        col.push_back(S(1));  // total-weight row
        columns.push_back(std::move(col));
    }
    std::vector<S> rhs = p.entries();
    rhs.push_back(S(1));

    const FeasibilityResult<S> lp = solve_feasibility(std::move(columns), std::move(rhs), tol);

    ClassicalCertificate<S> cert;
    if (lp.feasible) {
        cert.verdict = Verdict::Classical;
        FunctionDistribution<S> mu{sh, {}};
        for (std::size_t j = 0; j < lp.solution.size(); ++j) {
            S w = lp.solution[j];
            if constexpr (!ScalarTraits<S>::is_exact) {
                if (scalar_abs(w) <= tol) continue;
            } else if (w == S(0)) {
                continue;
            }
            mu.weights.emplace_back(static_cast<std::uint64_t>(j), std::move(w));
        }
        const Correlation<S> rebuilt = correlation_from_distribution(mu);
        const S dev = max_entry_distance(rebuilt, p);
        if constexpr (ScalarTraits<S>::is_exact) {
            if (dev != S(0))
                throw CertificateMismatch("classical witness fails to reproduce the input",
                                          to_double(dev));
        } else {
            if (dev > tol * S(1000))
                throw CertificateMismatch("classical witness fails to reproduce the input", dev);
        }
        cert.distribution = std::move(mu);
        return cert;
    }

    cert.verdict = Verdict::NotClassical;
    SeparatingFunctional<S> fun;
    fun.coefficients.assign(lp.farkas.begin(), lp.farkas.begin() + static_cast<long>(dim));
    fun.bound = S(-lp.farkas[dim]);
    if constexpr (ScalarTraits<S>::is_exact) {
        RatVec scaled = fun.coefficients;
        scaled.push_back(fun.bound);
        scale_to_coprime_integers(scaled);
        fun.bound = scaled.back();
        scaled.pop_back();
        fun.coefficients = std::move(scaled);
    }
    // Independent verification of the certificate.
    const S slack = ScalarTraits<S>::is_exact ? S(0) : S(tol * S(100));
    for (const auto& v : vertices) {
        const S val = fun.value(v);
        if (val > fun.bound + slack)
            throw CertificateMismatch("separating functional exceeds its bound on a vertex",
                                      to_double(S(val - fun.bound)));
    }
    fun.margin = S(fun.value(p) - fun.bound);
    if (!(fun.margin > slack))
        throw CertificateMismatch("separating functional does not separate the input",
                                  to_double(fun.margin));
    cert.functional = std::move(fun);
    return cert;
}

/// For two inputs, a symmetric synchronous nonsignaling correlation is
/// classical with the explicit witness mu(f) = p(f(0), f(1) | 0, 1).
template <class S>
FunctionDistribution<S> two_input_decompose(const Correlation<S>& p,
                                            const S& tol = ScalarTraits<S>::default_tol()) {
    const GameShape& sh = p.shape();
    if (sh.n != 2) throw DimensionMismatch("decomposition requires exactly two inputs");
    if (!is_synchronous(p, tol).ok) throw NotSynchronous("input is not synchronous");
    if (!is_nonsignaling(p, tol).ok) throw NotNonsignaling("input is signaling");
    if (!is_symmetric(p, tol)) throw NotSymmetric("input is not symmetric under player swap");

    FunctionDistribution<S> mu{sh, {}};
    for (int y0 = 0; y0 < sh.m; ++y0)
        for (int y1 = 0; y1 < sh.m; ++y1) {
            S w = p(y0, y1, 0, 1);
            if constexpr (ScalarTraits<S>::is_exact) {
                if (w == S(0)) continue;
            } else {
                if (w <= tol) continue;
            }
            const std::uint64_t idx =
                static_cast<std::uint64_t>(y0) * static_cast<std::uint64_t>(sh.m) +
                static_cast<std::uint64_t>(y1);
            mu.weights.emplace_back(idx, std::move(w));
        }
    mu.validate(ScalarTraits<S>::is_exact ? S(0) : S(tol * S(100)));

    const Correlation<S> rebuilt = correlation_from_distribution(mu);
    const S dev = max_entry_distance(rebuilt, p);
    if constexpr (ScalarTraits<S>::is_exact) {
        if (dev != S(0))
            throw CertificateMismatch("two-input witness fails to reproduce the input",
                                      to_double(dev));
    } else {
        if (dev > tol * S(1000))
            throw CertificateMismatch("two-input witness fails to reproduce the input", dev);
    }
    return mu;
}

}  // namespace syncorr
