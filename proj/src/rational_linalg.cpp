#include "syncorr/rational_linalg.hpp"

#include "syncorr/errors.hpp"

namespace syncorr {

void scale_to_coprime_integers(RatVec& v) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    BigInt lcm_den(1);
    bool any = false;
    for (const Rational& x : v) {
        if (x == 0) continue;
        any = true;
        lcm_den = boost::multiprecision::lcm(lcm_den, BigInt(denominator(x)));
    }
    if (!any) return;
    BigInt gcd_num(0);
    std::vector<BigInt> scaled(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Rational t = v[i] * Rational(lcm_den);
        scaled[i] = BigInt(numerator(t));
        gcd_num = boost::multiprecision::gcd(gcd_num, scaled[i]);
    }
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(scaled[i] / gcd_num);
}

namespace {

/// Row echelon form in place; returns the pivot column of each eliminated row.
std::vector<std::size_t> echelon(RatMat& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t ncols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const Rational inv = Rational(1) / rows[r][c];
        for (std::size_t j = c; j < ncols; ++j) rows[r][j] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rat_rank(RatMat rows) { return echelon(rows).size(); }

bool rat_independent_of(const RatMat& rows, const RatVec& row) {
    RatMat copy = rows;
    copy.push_back(row);
    return rat_rank(std::move(copy)) > rat_rank(rows);
}

RatMat rat_nullspace(const RatMat& rows, std::size_t ncols) {
    RatMat work = rows;
    for (const RatVec& r : work)
        if (r.size() != ncols) throw DimensionMismatch("nullspace row width");
    const std::vector<std::size_t> pivots = echelon(work);

    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    RatMat basis;
    for (std::size_t free_c = 0; free_c < ncols; ++free_c) {
        if (is_pivot[free_c]) continue;
        RatVec x(ncols, Rational(0));
        x[free_c] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            // Row i reads x[pivots[i]] + sum over free columns = 0.
            x[pivots[i]] = -work[i][free_c];
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<RatVec> rat_solve(RatMat a, RatVec b) {
    const std::size_t m = a.size();
    if (b.size() != m) throw DimensionMismatch("solve rhs length");
    const std::size_t ncols = m == 0 ? 0 : a[0].size();
    RatMat aug = std::move(a);
    for (std::size_t i = 0; i < m; ++i) {
        if (aug[i].size() != ncols) throw DimensionMismatch("solve row width");
        aug[i].push_back(b[i]);
    }
    std::vector<std::size_t> pivots = echelon(aug);
    RatVec x(ncols, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == ncols) return std::nullopt;  // pivot in the rhs column: inconsistent
        x[pivots[i]] = aug[i][ncols];
    }
    return x;
}

bool RankAccumulator::add(RatVec row) {
    if (row.size() != ncols_) {
        throw DimensionMismatch("rank accumulator row width mismatch");
    }
    for (std::size_t i = 0; i < echelon_.size(); ++i) {
        const Rational& factor = row[pivot_cols_[i]];
        if (factor != 0) {
            const Rational f = factor;  // copy: row is mutated below
            for (std::size_t c = 0; c < ncols_; ++c) {
                row[c] -= f * echelon_[i][c];
            }
        }
    }
    std::size_t pivot = ncols_;
    for (std::size_t c = 0; c < ncols_; ++c) {
        if (row[c] != 0) {
            pivot = c;
            break;
        }
    }
    if (pivot == ncols_) {
        return false;
    }
    const Rational lead = row[pivot];
    for (std::size_t c = 0; c < ncols_; ++c) {
        row[c] /= lead;
    }
    // Keep pivot columns increasing so later reductions stay cheap.
    std::size_t pos = 0;
    while (pos < pivot_cols_.size() && pivot_cols_[pos] < pivot) {
        ++pos;
    }
    echelon_.insert(echelon_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
    pivot_cols_.insert(pivot_cols_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
    return true;
}

Rational rat_dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot of unequal lengths");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace syncorr
