#pragma once

#include "syncorr/errors.hpp"
#include "syncorr/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace syncorr {

/// Outcome of the feasibility problem  A x = b, x >= 0.
template <class S>
struct FeasibilityResult {
    bool feasible = false;
    /// Basic feasible solution when feasible (length = number of columns).
    std::vector<S> solution;
    /// Farkas certificate when infeasible: y with  y^T A <= 0  and  y^T b > 0.
    std::vector<S> farkas;
};

/// Phase-I simplex on a dense tableau. Rational mode pivots exactly with
/// Bland's rule; float mode uses tolerance pivoting and verifies the outcome
/// against the residual afterwards.
template <class S>
class PhaseOneSimplex {
public:
    /// `columns[j]` is the j-th column of A (all of equal length = rows of A).
    PhaseOneSimplex(std::vector<std::vector<S>> columns, std::vector<S> rhs,
                    const S& tol = ScalarTraits<S>::default_tol())
        : cols_(std::move(columns)), b_(std::move(rhs)), tol_(tol) {
        m_ = b_.size();
        n_ = cols_.size();
        for (const auto& c : cols_)
            if (c.size() != m_) throw DimensionMismatch("ragged LP column");
    }

    FeasibilityResult<S> solve() {
        build_tableau();
        run();
        return extract();
    }

private:
    std::vector<std::vector<S>> cols_;
    std::vector<S> b_;
    S tol_;
    std::size_t m_ = 0, n_ = 0;

    std::vector<std::vector<S>> T_;  // m_+1 rows, n_+m_+1 columns; last row = reduced costs
    std::vector<std::size_t> basis_;
    std::vector<bool> flipped_;

    std::size_t width() const { return n_ + m_ + 1; }
    std::size_t rhs_col() const { return n_ + m_; }

    bool strictly_negative(const S& v) const {
        if constexpr (ScalarTraits<S>::is_exact)
            return v < S(0);
        else
            return v < -tol_;
    }
    bool strictly_positive(const S& v) const {
        if constexpr (ScalarTraits<S>::is_exact)
            return v > S(0);
        else
            return v > tol_;
    }

    void build_tableau() {
        flipped_.assign(m_, false);
        T_.assign(m_ + 1, std::vector<S>(width(), S(0)));
        for (std::size_t i = 0; i < m_; ++i) {
            const bool flip = b_[i] < S(0);
            flipped_[i] = flip;
            for (std::size_t j = 0; j < n_; ++j) T_[i][j] = flip ? S(-cols_[j][i]) : cols_[j][i];
            T_[i][n_ + i] = S(1);
            T_[i][rhs_col()] = flip ? S(-b_[i]) : b_[i];
        }
        // Reduced costs r_j = c_j - z_j with the all-artificial basis (c_B = 1):
        // x columns get -sum of their entries, artificial columns get 0.
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
        for (std::size_t j = 0; j < n_; ++j) {
            S s(0);
            for (std::size_t i = 0; i < m_; ++i) s += T_[i][j];
            T_[m_][j] = -s;
        }
        S s(0);
        for (std::size_t i = 0; i < m_; ++i) s += T_[i][rhs_col()];
        T_[m_][rhs_col()] = -s;  // stores -objective
    }

    void pivot(std::size_t pr, std::size_t pc) {
        const S piv = T_[pr][pc];
        for (std::size_t j = 0; j < width(); ++j) T_[pr][j] /= piv;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == pr) continue;
            const S factor = T_[i][pc];
            if (factor == S(0)) continue;
            for (std::size_t j = 0; j < width(); ++j) T_[i][j] -= factor * T_[pr][j];
            T_[i][pc] = S(0);
        }
        basis_[pr] = pc;
    }

    void run() {
        const std::size_t max_iters = 4096 + 64 * (m_ + 1) * (n_ + m_ + 1);
        for (std::size_t iter = 0; iter < max_iters; ++iter) {
            // Bland's rule: lowest-index improving column.
            std::size_t pc = width();
            for (std::size_t j = 0; j < n_ + m_; ++j)
                if (strictly_negative(T_[m_][j])) {
                    pc = j;
                    break;
                }
            if (pc == width()) return;  // optimal

            std::size_t pr = m_;
            bool have = false;
            S best(0);
            for (std::size_t i = 0; i < m_; ++i) {
                if (!strictly_positive(T_[i][pc])) continue;
                const S ratio = T_[i][rhs_col()] / T_[i][pc];
                if (!have || ratio < best ||
                    (ratio == best && basis_[i] < basis_[pr])) {
                    have = true;
                    best = ratio;
                    pr = i;
                }
            }
            if (!have) throw Unbounded("phase-I objective unbounded; input is inconsistent");
            pivot(pr, pc);
        }
        throw NumericalFailure("simplex iteration cap reached");
    }

    FeasibilityResult<S> extract() {
        FeasibilityResult<S> out;
        const S objective = S(-T_[m_][rhs_col()]);
        const bool feasible = ScalarTraits<S>::is_exact ? objective == S(0)
                                                        : scalar_abs(objective) <= tol_ * S(100);
        if (feasible) {
            out.feasible = true;
            out.solution.assign(n_, S(0));
            for (std::size_t i = 0; i < m_; ++i)
                if (basis_[i] < n_) out.solution[basis_[i]] = T_[i][rhs_col()];
            if constexpr (!ScalarTraits<S>::is_exact) verify_solution(out.solution);
            return out;
        }
        // Dual vector from artificial reduced costs: r_{a_i} = 1 - y_i.
        out.feasible = false;
        out.farkas.assign(m_, S(0));
        for (std::size_t i = 0; i < m_; ++i) {
            S y = S(1) - T_[m_][n_ + i];
            if (flipped_[i]) y = -y;
            out.farkas[i] = y;
        }
        verify_farkas(out.farkas);
        return out;
    }

    void verify_solution(const std::vector<S>& x) const {
        for (std::size_t i = 0; i < m_; ++i) {
            S resid = -b_[i];
            for (std::size_t j = 0; j < n_; ++j) resid += cols_[j][i] * x[j];
            if (scalar_abs(resid) > tol_ * S(1000))
                throw NumericalFailure("float simplex produced a solution with large residual");
        }
    }

    void verify_farkas(const std::vector<S>& y) const {
        S slack_tol = ScalarTraits<S>::is_exact ? S(0) : S(tol_ * S(100));
        for (std::size_t j = 0; j < n_; ++j) {
            S dot(0);
            for (std::size_t i = 0; i < m_; ++i) dot += y[i] * cols_[j][i];
            if (dot > slack_tol)
                throw NumericalFailure("infeasibility certificate fails y^T A <= 0");
        }
        S dot(0);
        for (std::size_t i = 0; i < m_; ++i) dot += y[i] * b_[i];
        if (!(dot > slack_tol))
            throw NumericalFailure("infeasibility certificate fails y^T b > 0");
    }
};

template <class S>
FeasibilityResult<S> solve_feasibility(std::vector<std::vector<S>> columns, std::vector<S> rhs,
                                       const S& tol = ScalarTraits<S>::default_tol()) {
    return PhaseOneSimplex<S>(std::move(columns), std::move(rhs), tol).solve();
}

}  // namespace syncorr
