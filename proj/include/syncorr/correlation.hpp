#pragma once

#include "syncorr/errors.hpp"
#include "syncorr/scalar.hpp"

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace syncorr {

/// Input/output alphabet sizes of a two-player game: |X| = n, |Y| = m.
struct GameShape {
    int n = 0;
    int m = 0;

    GameShape() = default;
    GameShape(int n_, int m_) : n(n_), m(m_) {
        if (n < 1 || m < 1) throw ValueOutOfRange("GameShape requires n >= 1 and m >= 1");
    }

    int columns() const { return n * n; }
    int rows() const { return m * m; }
    int column(int xa, int xb) const { return n * xa + xb; }
    int row(int ya, int yb) const { return m * ya + yb; }

    bool operator==(const GameShape&) const = default;
};

/// A conditional distribution p(yA,yB|xA,xB) stored as a dense column-stochastic
/// m^2 x n^2 array: row m*yA+yB, column n*xA+xB. Immutable after construction.
template <class S>
class Correlation {
public:
    Correlation(GameShape shape, std::vector<S> entries)
        : shape_(shape), entries_(std::move(entries)) {
        if (static_cast<int>(entries_.size()) != shape_.rows() * shape_.columns())
            throw DimensionMismatch("entry count does not match shape");
    }

    const GameShape& shape() const { return shape_; }

    const S& operator()(int ya, int yb, int xa, int xb) const {
        return entries_[static_cast<std::size_t>(shape_.row(ya, yb)) * shape_.columns() +
                        shape_.column(xa, xb)];
    }
    const S& at_rc(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * shape_.columns() + col];
    }
    const std::vector<S>& entries() const { return entries_; }

    bool operator==(const Correlation&) const = default;

private:
    GameShape shape_;
    std::vector<S> entries_;  // row-major
};

enum class Side { A, B };

/// A per-input output distribution of one player: values(y, x), each column x
/// summing to 1.
template <class S>
struct Marginal {
    Side side;
    GameShape shape;
    std::vector<S> values;  // m x n row-major, index y * n + x

    const S& operator()(int y, int x) const { return values[static_cast<std::size_t>(y) * shape.n + x]; }
};

template <class S>
struct SynchronousCheck {
    bool ok = false;
    /// (x, yA, yB) triples with yA != yB and p(yA,yB|x,x) beyond tolerance.
    std::vector<std::tuple<int, int, int>> offenders;
};

template <class S>
struct NonsignalingCheck {
    bool ok = false;
    std::optional<Marginal<S>> marginal_a;
    std::optional<Marginal<S>> marginal_b;
};

template <class S>
struct FloatConversion {
    Correlation<double> value;
    /// True when every rational entry was representable exactly in a double.
    bool lossless = true;
};

namespace detail {

template <class S>
S checked_nonneg(const S& v, const S& tol, std::size_t row, std::size_t col) {
    if (v >= S(0)) return v;
    if (scalar_abs(v) <= tol) return S(0);  // clamp float dust
    throw NegativeEntry("negative entry at row " + std::to_string(row) + ", column " +
                            std::to_string(col),
                        row, col);
}

}  // namespace detail

/// Checks nonnegativity and column sums of a raw dense array. Rational mode is
/// exact; float mode accepts |sum - 1| <= tol and renormalizes each column
/// (entries in [-tol, 0) are clamped to zero first).
template <class S>
Correlation<S> validate_stochastic(std::vector<S> raw, const GameShape& shape, const S& tol) {
    const std::size_t rows = static_cast<std::size_t>(shape.rows());
    const std::size_t cols = static_cast<std::size_t>(shape.columns());
    if (raw.size() != rows * cols) throw DimensionMismatch("raw array does not match shape");

    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            raw[r * cols + c] = detail::checked_nonneg(raw[r * cols + c], tol, r, c);

    for (std::size_t c = 0; c < cols; ++c) {
        S sum(0);
        for (std::size_t r = 0; r < rows; ++r) sum += raw[r * cols + c];
        if (!within_tol(S(sum - S(1)), tol))
            throw ColumnSumViolation("column " + std::to_string(c) + " sums to " +
                                         std::to_string(to_double(sum)),
                                     c, to_double(S(sum - S(1))));
        if constexpr (!ScalarTraits<S>::is_exact) {
            if (sum != S(0))
                for (std::size_t r = 0; r < rows; ++r) raw[r * cols + c] /= sum;
        }
    }
    return Correlation<S>(shape, std::move(raw));
}

/// The correlation of the deterministic strategy "both players apply f":
/// p(yA,yB|xA,xB) = [yA = f(xA)][yB = f(xB)].
template <class S>
Correlation<S> from_function(const std::vector<int>& f, const GameShape& shape) {
    if (static_cast<int>(f.size()) != shape.n)
        throw DimensionMismatch("function table must have length n");
    for (int x = 0; x < shape.n; ++x)
        if (f[x] < 0 || f[x] >= shape.m)
            throw ValueOutOfRange("f(" + std::to_string(x) + ") = " + std::to_string(f[x]) +
                                  " outside 0.." + std::to_string(shape.m - 1));
    std::vector<S> entries(static_cast<std::size_t>(shape.rows()) * shape.columns(), S(0));
    for (int xa = 0; xa < shape.n; ++xa)
        for (int xb = 0; xb < shape.n; ++xb)
            entries[static_cast<std::size_t>(shape.row(f[xa], f[xb])) * shape.columns() +
                    shape.column(xa, xb)] = S(1);
    return Correlation<S>(shape, std::move(entries));
}

/// Both players always agree on equal inputs: p(yA,yB|x,x) = 0 for yA != yB.
template <class S>
SynchronousCheck<S> is_synchronous(const Correlation<S>& p, const S& tol) {
    SynchronousCheck<S> result;
    result.ok = true;
    const GameShape& sh = p.shape();
    for (int x = 0; x < sh.n; ++x)
        for (int ya = 0; ya < sh.m; ++ya)
            for (int yb = 0; yb < sh.m; ++yb) {
                if (ya == yb) continue;
                if (!within_tol(p(ya, yb, x, x), tol)) {
                    result.ok = false;
                    result.offenders.emplace_back(x, ya, yb);
                }
            }
    return result;
}

/// Each player's marginal must not depend on the other player's input. On
/// success the well-defined marginals are returned.
template <class S>
NonsignalingCheck<S> is_nonsignaling(const Correlation<S>& p, const S& tol) {
    NonsignalingCheck<S> result;
    result.ok = true;
    const GameShape& sh = p.shape();

    auto marg_a = [&](int y, int xa, int xb) {
        S s(0);
        for (int yb = 0; yb < sh.m; ++yb) s += p(y, yb, xa, xb);
        return s;
    };
    auto marg_b = [&](int y, int xa, int xb) {
        S s(0);
        for (int ya = 0; ya < sh.m; ++ya) s += p(ya, y, xa, xb);
        return s;
    };

    for (int y = 0; y < sh.m && result.ok; ++y)
        for (int xa = 0; xa < sh.n && result.ok; ++xa)
            for (int xb = 1; xb < sh.n && result.ok; ++xb)
                if (!within_tol(S(marg_a(y, xa, xb) - marg_a(y, xa, 0)), tol)) result.ok = false;
    for (int y = 0; y < sh.m && result.ok; ++y)
        for (int xb = 0; xb < sh.n && result.ok; ++xb)
            for (int xa = 1; xa < sh.n && result.ok; ++xa)
                if (!within_tol(S(marg_b(y, xa, xb) - marg_b(y, 0, xb)), tol)) result.ok = false;

    if (result.ok) {
        Marginal<S> ma{Side::A, sh, std::vector<S>(static_cast<std::size_t>(sh.m) * sh.n, S(0))};
        Marginal<S> mb{Side::B, sh, std::vector<S>(static_cast<std::size_t>(sh.m) * sh.n, S(0))};
        for (int y = 0; y < sh.m; ++y)
            for (int x = 0; x < sh.n; ++x) {
                ma.values[static_cast<std::size_t>(y) * sh.n + x] = marg_a(y, x, 0);
                mb.values[static_cast<std::size_t>(y) * sh.n + x] = marg_b(y, 0, x);
            }
        result.marginal_a = std::move(ma);
        result.marginal_b = std::move(mb);
    }
    return result;
}

/// Invariance under swapping the players: p(yA,yB|xA,xB) = p(yB,yA|xB,xA).
template <class S>
bool is_symmetric(const Correlation<S>& p, const S& tol) {
    const GameShape& sh = p.shape();
    for (int xa = 0; xa < sh.n; ++xa)
        for (int xb = 0; xb < sh.n; ++xb)
            for (int ya = 0; ya < sh.m; ++ya)
                for (int yb = 0; yb < sh.m; ++yb)
                    if (!within_tol(S(p(ya, yb, xa, xb) - p(yb, ya, xb, xa)), tol)) return false;
    return true;
}

/// Entrywise convex combination. All terms must share shape and scalar mode;
/// weights must be nonnegative and sum to 1 (within tol in float mode).
template <class S>
Correlation<S> convex_combine(const std::vector<std::pair<S, Correlation<S>>>& terms,
                              const S& tol = ScalarTraits<S>::default_tol()) {
    if (terms.empty()) throw WeightSumViolation("empty combination");
    const GameShape sh = terms.front().second.shape();
    S total(0);
    for (const auto& [w, c] : terms) {
        if (w < S(0) && !within_tol(w, tol)) throw WeightSumViolation("negative weight");
        if (!(c.shape() == sh)) throw ShapeMismatch("mixed shapes in combination");
        total += w;
    }
    if (!within_tol(S(total - S(1)), tol))
        throw WeightSumViolation("weights sum to " + std::to_string(to_double(total)));

    std::vector<S> entries(static_cast<std::size_t>(sh.rows()) * sh.columns(), S(0));
    for (const auto& [w, c] : terms)
        for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += w * c.entries()[i];
    return Correlation<S>(sh, std::move(entries));
}

/// Explicit, lossy-flagged conversion to float mode. The reverse direction is
/// deliberately not provided.
FloatConversion<Rational> to_float(const Correlation<Rational>& p);

/// Largest entrywise |a - b|; shapes must match.
template <class S>
S max_entry_distance(const Correlation<S>& a, const Correlation<S>& b) {
    if (!(a.shape() == b.shape())) throw ShapeMismatch("distance of differently shaped correlations");
    S best(0);
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        S d = scalar_abs(S(a.entries()[i] - b.entries()[i]));
        if (d > best) best = d;
    }
    return best;
}

}  // namespace syncorr
