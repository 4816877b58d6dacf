#pragma once

#include "syncorr/correlation.hpp"
#include "syncorr/errors.hpp"
#include "syncorr/rational_linalg.hpp"
#include "syncorr/scalar.hpp"

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace syncorr {

/// Half-space representation over exact rationals: a·x <= b and c·x = e rows.
struct HPolytope {
    std::size_t dim = 0;
    std::vector<std::pair<RatVec, Rational>> inequalities;
    std::vector<std::pair<RatVec, Rational>> equations;

    HPolytope(std::size_t dim_, std::vector<std::pair<RatVec, Rational>> ineqs,
              std::vector<std::pair<RatVec, Rational>> eqs);
};

/// Vertex representation: minimal list of extreme points, kept sorted.
struct VPolytope {
    std::size_t dim = 0;
    RatMat vertices;
};

/// Exact vertex enumeration by the double description method with
/// lexicographic insertion order. Rejects empty and unbounded inputs.
VPolytope dd_enumerate(const HPolytope& h);

/// Dimension of the affine hull of the vertex set.
std::size_t affine_dimension(const VPolytope& v);

/// Exact facet (and affine-hull equation) recovery from a vertex set, via the
/// polar polytope in affine-hull coordinates. Inequalities are scaled to
/// coprime integer coefficients and sorted.
HPolytope facet_enumeration(const VPolytope& v);

/// The 24 inequalities cutting out the synchronous nonsignaling body for
/// three binary questions, in w-coordinates (dim 9).
HPolytope sync_ns_polytope_3_2();

/// The classical body in the same coordinates: three symmetry equations, the
/// twelve reduced inequalities, and the four Bell inequalities.
HPolytope classical_polytope_3_2();

/// Definitional constraints on the full dense table for any shape:
/// nonnegativity, column sums, agreement zeros, and (optionally) the
/// nonsignaling marginal equalities. Coordinates follow Correlation storage.
HPolytope synchronous_hrep(const GameShape& shape, bool with_nonsignaling);

/// All deterministic tables satisfying the synchronous constraints (each
/// column independently a vertex of its zero-patterned simplex), as points in
/// the same coordinates as synchronous_hrep. Sorted lexicographically.
RatMat enumerate_synchronous_vertices(const GameShape& shape,
                                      std::uint64_t cap = 1u << 16);

// ---------------------------------------------------------------------------
// w-coordinates for three questions and binary answers (dim 9).
// ---------------------------------------------------------------------------

/// w[3*xa + xb] = p(1,1 | xa,xb).
template <class S>
struct WCoordinates {
    std::array<S, 9> w{};

    const S& operator()(int xa, int xb) const { return w[static_cast<std::size_t>(3 * xa + xb)]; }
};

enum class BellInequality { None, J0, J1, J2, J3 };

const char* bell_name(BellInequality b);

template <class S>
struct BellReport {
    S j0{}, j1{}, j2{}, j3{};
    BellInequality violated = BellInequality::None;
    S magnitude{};  // amount by which the violated inequality fails; 0 if none
};

/// Extracts w from a synchronous nonsignaling correlation with shape (3,2).
template <class S>
WCoordinates<S> w_coordinates(const Correlation<S>& p) {
    if (!(p.shape() == GameShape(3, 2)))
        throw ShapeMismatch("w-coordinates require three questions and binary answers");
    WCoordinates<S> out;
    for (int xa = 0; xa < 3; ++xa)
        for (int xb = 0; xb < 3; ++xb) out.w[static_cast<std::size_t>(3 * xa + xb)] = p(1, 1, xa, xb);
    return out;
}

/// Rebuilds the full table from w. The preconditions are the two-answer
/// feasibility conditions: (0) w >= 0, (1) w(xa,xb) <= w(xa,xa),
/// (2) w(xa,xb) <= w(xb,xb), (3) w(xa,xa) + w(xb,xb) <= 1 + w(xa,xb).
template <class S>
Correlation<S> correlation_from_w(const WCoordinates<S>& w,
                                  const S& tol = ScalarTraits<S>::default_tol()) {
    const GameShape sh(3, 2);
    auto W = [&](int a, int b) { return w.w[static_cast<std::size_t>(3 * a + b)]; };
    for (int xa = 0; xa < 3; ++xa)
        for (int xb = 0; xb < 3; ++xb) {
            if (W(xa, xb) < S(0) && !within_tol(W(xa, xb), tol))
                throw ConditionViolated("w entry is negative", 0, xa, xb);
            if (W(xa, xb) > W(xa, xa) && !within_tol(S(W(xa, xb) - W(xa, xa)), tol))
                throw ConditionViolated("w(xa,xb) exceeds w(xa,xa)", 1, xa, xb);
            if (W(xa, xb) > W(xb, xb) && !within_tol(S(W(xa, xb) - W(xb, xb)), tol))
                throw ConditionViolated("w(xa,xb) exceeds w(xb,xb)", 2, xa, xb);
            const S lhs = S(W(xa, xa) + W(xb, xb));
            const S rhs = S(S(1) + W(xa, xb));
            if (lhs > rhs && !within_tol(S(lhs - rhs), tol))
                throw ConditionViolated("w(xa,xa) + w(xb,xb) exceeds 1 + w(xa,xb)", 3, xa, xb);
        }
    std::vector<S> entries(static_cast<std::size_t>(sh.rows()) * sh.columns(), S(0));
    auto set = [&](int ya, int yb, int xa, int xb, S v) {
        entries[static_cast<std::size_t>(sh.row(ya, yb)) * sh.columns() + sh.column(xa, xb)] =
            std::move(v);
    };
    for (int xa = 0; xa < 3; ++xa)
        for (int xb = 0; xb < 3; ++xb) {
            set(0, 0, xa, xb, S(S(1) + W(xa, xb) - W(xa, xa) - W(xb, xb)));
            set(0, 1, xa, xb, S(W(xb, xb) - W(xa, xb)));
            set(1, 0, xa, xb, S(W(xa, xa) - W(xa, xb)));
            set(1, 1, xa, xb, W(xa, xb));
        }
    return validate_stochastic(std::move(entries), sh, tol);
}

/// Packages four functional values, marking the (single, for nonsignaling
/// inputs) violated inequality among J0 <= 1, J1 >= 0, J2 >= 0, J3 >= 0.
template <class S>
BellReport<S> classify_bell(S j0, S j1, S j2, S j3, const S& tol) {
    BellReport<S> r;
    r.j0 = std::move(j0);
    r.j1 = std::move(j1);
    r.j2 = std::move(j2);
    r.j3 = std::move(j3);
    r.violated = BellInequality::None;
    r.magnitude = S(0);
    auto consider = [&](BellInequality which, const S& excess) {
        if (excess > tol && excess > r.magnitude) {
            r.violated = which;
            r.magnitude = excess;
        }
    };
    consider(BellInequality::J0, S(r.j0 - S(1)));
    consider(BellInequality::J1, S(-r.j1));
    consider(BellInequality::J2, S(-r.j2));
    consider(BellInequality::J3, S(-r.j3));
    return r;
}

/// The four Bell functionals in w-coordinates; at most one can be violated by
/// a nonsignaling point.
template <class S>
BellReport<S> bell_values(const WCoordinates<S>& w, const S& tol = ScalarTraits<S>::default_tol()) {
    const auto& v = w.w;
    return classify_bell(S(v[0] - v[3] + v[4] - v[6] - v[7] + v[8]),
                         S(v[0] - v[3] - v[6] + v[7]), S(-v[3] + v[4] + v[6] - v[7]),
                         S(v[3] - v[6] - v[7] + v[8]), tol);
}

/// The 80 extreme points of sync_ns_polytope_3_2 partitioned by which Bell
/// inequality (if any) each violates.
struct NsVertexClassification {
    VPolytope polytope;                                   // all vertices, sorted
    std::array<std::vector<std::size_t>, 4> violating;    // indices by J0..J3
    std::vector<std::size_t> nonviolating;
    Rational max_magnitude;                               // largest violation
};

NsVertexClassification ns_vertex_classification();

// ---------------------------------------------------------------------------
// Two-question constructions from answer-pair tables.
// ---------------------------------------------------------------------------

/// The joint tables u(yA,yB) = p(.|0,1) and v(yA,yB) = p(.|1,0) of a
/// two-question synchronous nonsignaling correlation, with the shared
/// marginals theta (answers on question 0) and phi (answers on question 1).
template <class S>
struct TwoPointDomainData {
    int m = 0;
    std::vector<S> u, v;        // m x m row-major
    std::vector<S> theta, phi;  // length m
};

namespace detail {

template <class S>
void check_table(const std::vector<S>& t, int m, const S& tol, const char* name) {
    if (static_cast<int>(t.size()) != m * m) throw DimensionMismatch("table size");
    S sum(0);
    for (const S& x : t) {
        if (x < S(0) && !within_tol(x, tol))
            throw ValueOutOfRange(std::string(name) + " has a negative entry");
        sum += x;
    }
    if (!within_tol(S(sum - S(1)), tol))
        throw ValueOutOfRange(std::string(name) + " does not sum to 1");
}

}  // namespace detail

/// Builds the two-question correlation whose equal-question columns are the
/// shared marginals on the diagonal and whose mixed-question columns are u
/// and v. The compatibility conditions (row sums of u = column sums of v, and
/// the mirror) are verified and returned as theta/phi.
template <class S>
std::pair<Correlation<S>, TwoPointDomainData<S>> two_point_nonsignaling(
    const std::vector<S>& u, const std::vector<S>& v, int m,
    const S& tol = ScalarTraits<S>::default_tol()) {
    if (m < 1) throw ValueOutOfRange("m must be positive");
    detail::check_table(u, m, tol, "u");
    detail::check_table(v, m, tol, "v");

    TwoPointDomainData<S> data{m, u, v, std::vector<S>(m, S(0)), std::vector<S>(m, S(0))};
    auto U = [&](int a, int b) { return u[static_cast<std::size_t>(a) * m + b]; };
    auto V = [&](int a, int b) { return v[static_cast<std::size_t>(a) * m + b]; };
    for (int y = 0; y < m; ++y) {
        S urow(0), ucol(0), vrow(0), vcol(0);
        for (int z = 0; z < m; ++z) {
            urow += U(y, z);
            ucol += U(z, y);
            vrow += V(y, z);
            vcol += V(z, y);
        }
        if (!within_tol(S(urow - vcol), tol))
            throw MarginalMismatch("row sum of u differs from column sum of v at answer " +
                                   std::to_string(y));
        if (!within_tol(S(ucol - vrow), tol))
            throw MarginalMismatch("column sum of u differs from row sum of v at answer " +
                                   std::to_string(y));
        data.theta[static_cast<std::size_t>(y)] = urow;
        data.phi[static_cast<std::size_t>(y)] = ucol;
    }

    const GameShape sh(2, m);
    std::vector<S> entries(static_cast<std::size_t>(sh.rows()) * sh.columns(), S(0));
    auto set = [&](int ya, int yb, int xa, int xb, const S& val) {
        entries[static_cast<std::size_t>(sh.row(ya, yb)) * sh.columns() + sh.column(xa, xb)] = val;
    };
    for (int ya = 0; ya < m; ++ya)
        for (int yb = 0; yb < m; ++yb) {
            set(ya, yb, 0, 1, U(ya, yb));
            set(ya, yb, 1, 0, V(ya, yb));
        }
    for (int y = 0; y < m; ++y) {
        set(y, y, 0, 0, data.theta[static_cast<std::size_t>(y)]);
        set(y, y, 1, 1, data.phi[static_cast<std::size_t>(y)]);
    }
    return {validate_stochastic(std::move(entries), sh, tol), std::move(data)};
}

/// The classical special case: v is the transpose of u, which makes the
/// result symmetric and a mixture of deterministic strategies.
template <class S>
std::pair<Correlation<S>, TwoPointDomainData<S>> two_point_classical(
    const std::vector<S>& u, int m, const S& tol = ScalarTraits<S>::default_tol()) {
    if (m < 1 || static_cast<int>(u.size()) != m * m) throw DimensionMismatch("table size");
    std::vector<S> v(u.size());
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            v[static_cast<std::size_t>(a) * m + b] = u[static_cast<std::size_t>(b) * m + a];
    return two_point_nonsignaling(u, v, m, tol);
}

}  // namespace syncorr
