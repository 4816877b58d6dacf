#include "syncorr/correlation.hpp"
#include "syncorr/errors.hpp"
#include "syncorr/functions.hpp"
#include "syncorr/polytope.hpp"
#include "syncorr/rational_linalg.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

using namespace syncorr;

namespace {

RatVec rv(std::initializer_list<long> xs) {
    RatVec out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("rational linear algebra kernels") {
    // Rank and nullspace of a 2x3 system.
    RatMat rows = {rv({1, 0, 1}), rv({0, 1, 1}), rv({1, 1, 2})};
    CHECK(rat_rank(rows) == 2);
    const auto ns = rat_nullspace(rows, 3);
    REQUIRE(ns.size() == 1);
    // The kernel direction must annihilate every row.
    for (const auto& r : rows) CHECK(rat_dot(r, ns[0]) == Rational(0));

    const auto sol = rat_solve({rv({2, 0}), rv({0, 4})}, {Rational(6), Rational(8)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == Rational(3));
    CHECK((*sol)[1] == Rational(2));
    CHECK_FALSE(rat_solve({rv({1, 1}), rv({1, 1})}, {Rational(0), Rational(1)}).has_value());

    RatVec scale = {Rational(1, 2), Rational(3, 4), Rational(0)};
    scale_to_coprime_integers(scale);
    CHECK(scale == rv({2, 3, 0}));

    RankAccumulator acc(3);
    CHECK(acc.add(rv({0, 1, 1})));
    CHECK(acc.add(rv({1, 1, 0})));
    CHECK_FALSE(acc.add(rv({1, 2, 1})));
    CHECK(acc.add(rv({0, 0, 1})));
    CHECK(acc.rank() == 3);
}

TEST_CASE("double description on small hand-checked bodies") {
    // Unit square.
    HPolytope square(2,
                     {{rv({-1, 0}), Rational(0)},
                      {rv({0, -1}), Rational(0)},
                      {rv({1, 0}), Rational(1)},
                      {rv({0, 1}), Rational(1)}},
                     {});
    const auto sq = dd_enumerate(square);
    REQUIRE(sq.vertices.size() == 4);
    CHECK(sq.vertices[0] == rv({0, 0}));
    CHECK(sq.vertices[3] == rv({1, 1}));
    CHECK(affine_dimension(sq) == 2);

    // Probability simplex as an equation plus nonnegativity.
    HPolytope simplex(3,
                      {{rv({-1, 0, 0}), Rational(0)},
                       {rv({0, -1, 0}), Rational(0)},
                       {rv({0, 0, -1}), Rational(0)}},
                      {{rv({1, 1, 1}), Rational(1)}});
    const auto sx = dd_enumerate(simplex);
    REQUIRE(sx.vertices.size() == 3);
    CHECK(affine_dimension(sx) == 2);

    // A single point cut out by equations only.
    HPolytope point(2, {}, {{rv({1, 0}), Rational(2)}, {rv({0, 1}), Rational(-1)}});
    const auto pt = dd_enumerate(point);
    REQUIRE(pt.vertices.size() == 1);
    CHECK(pt.vertices[0] == rv({2, -1}));
    CHECK(affine_dimension(pt) == 0);
}

TEST_CASE("double description rejects unbounded and empty inputs") {
    HPolytope halfline(1, {{rv({-1}), Rational(0)}}, {});
    CHECK_THROWS_AS(dd_enumerate(halfline), Unbounded);

    HPolytope empty(1, {{rv({1}), Rational(-1)}, {rv({-1}), Rational(0)}}, {});
    CHECK_THROWS_AS(dd_enumerate(empty), Infeasible);

    CHECK_THROWS_AS(HPolytope(1, {{rv({0}), Rational(-1)}}, {}), Infeasible);
    CHECK_THROWS_AS(HPolytope(2, {{rv({1}), Rational(0)}}, {}), DimensionMismatch);
}

TEST_CASE("facet enumeration inverts vertex enumeration") {
    VPolytope square{2, {rv({0, 0}), rv({0, 1}), rv({1, 0}), rv({1, 1})}};
    const auto h = facet_enumeration(square);
    CHECK(h.equations.empty());
    REQUIRE(h.inequalities.size() == 4);
    // Round trip: the facets cut out exactly the original vertex set.
    const auto back = dd_enumerate(h);
    CHECK(back.vertices == square.vertices);

    // A segment in the plane: one equation, two facets.
    VPolytope segment{2, {rv({0, 0}), rv({2, 2})}};
    const auto hs = facet_enumeration(segment);
    CHECK(hs.equations.size() == 1);
    CHECK(hs.inequalities.size() == 2);
    CHECK(dd_enumerate(hs).vertices == segment.vertices);

    // A single point: equations only.
    VPolytope point{2, {rv({5, -3})}};
    const auto hp = facet_enumeration(point);
    CHECK(hp.equations.size() == 2);
    CHECK(hp.inequalities.empty());
    CHECK(dd_enumerate(hp).vertices == point.vertices);
}

TEST_CASE("the nonsignaling body has 80 vertices and its facets recover them") {
    const auto ns = dd_enumerate(sync_ns_polytope_3_2());
    CHECK(ns.vertices.size() == 80);
    CHECK(affine_dimension(ns) == 9);
    // Vertices are extreme: re-deriving the facets and re-enumerating is the
    // identity on the sorted vertex list.
    const auto facets = facet_enumeration(ns);
    CHECK(facets.equations.empty());
    CHECK(dd_enumerate(facets).vertices == ns.vertices);
}

TEST_CASE("vertex classification splits 32/48 with magnitude one half") {
    const auto cls = ns_vertex_classification();
    std::size_t violating = 0;
    for (const auto& lst : cls.violating) violating += lst.size();
    CHECK(violating == 32);
    CHECK(cls.nonviolating.size() == 48);
    CHECK(cls.max_magnitude == Rational(1, 2));
    // Nonviolating vertices satisfy every inequality exactly.
    for (const auto idx : cls.nonviolating) {
        WCoordinates<Rational> w;
        for (std::size_t i = 0; i < 9; ++i) w.w[i] = cls.polytope.vertices[idx][i];
        const auto b = bell_values(w, Rational(0));
        CHECK(b.violated == BellInequality::None);
    }
}

TEST_CASE("w-coordinate extraction and reconstruction are inverse") {
    const GameShape sh(3, 2);
    FunctionDistribution<Rational> mu{sh, {}};
    for (std::size_t i = 0; i < 8; ++i) mu.weights.emplace_back(i, Rational(1, 8));
    const auto p = correlation_from_distribution(mu);
    const auto w = w_coordinates(p);
    CHECK(w(0, 0) == Rational(1, 2));
    CHECK(w(0, 1) == Rational(1, 4));
    const auto back = correlation_from_w(w, Rational(0));
    CHECK(max_entry_distance(back, p) == Rational(0));

    const auto b = bell_values(w, Rational(0));
    CHECK(b.j0 == Rational(3, 4));
    CHECK(b.j1 == Rational(1, 4));
    CHECK(b.j2 == Rational(1, 4));
    CHECK(b.j3 == Rational(1, 4));
    CHECK(b.violated == BellInequality::None);

    CHECK_THROWS_AS(w_coordinates(from_function<Rational>({0, 1}, GameShape(2, 2))),
                    ShapeMismatch);
}

TEST_CASE("infeasible w-vectors report which condition broke") {
    WCoordinates<Rational> w;
    for (auto& x : w.w) x = Rational(1, 2);
    w.w[1] = Rational(3, 4);  // w(0,1) > w(0,0): condition 1
    try {
        correlation_from_w(w, Rational(0));
        FAIL("expected ConditionViolated");
    } catch (const ConditionViolated& e) {
        CHECK(e.which == 1);
        CHECK(e.xa == 0);
        CHECK(e.xb == 1);
    }

    WCoordinates<Rational> neg;
    for (auto& x : neg.w) x = Rational(0);
    neg.w[3] = Rational(-1, 8);
    CHECK_THROWS_AS(correlation_from_w(neg, Rational(0)), ConditionViolated);

    // w(0,0) + w(1,1) > 1 + w(0,1): condition 3.
    WCoordinates<Rational> heavy;
    for (auto& x : heavy.w) x = Rational(0);
    heavy.w[0] = Rational(1);
    heavy.w[4] = Rational(1);
    try {
        correlation_from_w(heavy, Rational(0));
        FAIL("expected ConditionViolated");
    } catch (const ConditionViolated& e) {
        CHECK(e.which == 3);
    }
}

TEST_CASE("synchronous vertex census for the smallest shapes") {
    const auto v22 = enumerate_synchronous_vertices(GameShape(2, 2));
    CHECK(v22.size() == 64);
    const auto dd22 = dd_enumerate(synchronous_hrep(GameShape(2, 2), false));
    CHECK(dd22.vertices == v22);

    const auto v13 = enumerate_synchronous_vertices(GameShape(1, 3));
    CHECK(v13.size() == 3);

    CHECK_THROWS_AS(enumerate_synchronous_vertices(GameShape(4, 4)), CapExceeded);
}

TEST_CASE("nonsignaling restriction of the definitional polytope") {
    // Adding the marginal equalities keeps every deterministic function table
    // (those are nonsignaling) among the vertices.
    const auto ns = dd_enumerate(synchronous_hrep(GameShape(2, 2), true));
    const GameShape sh(2, 2);
    std::size_t found = 0;
    for (const auto& f : enumerate_functions(sh)) {
        const auto table = from_function<Rational>(f, sh);
        if (std::binary_search(ns.vertices.begin(), ns.vertices.end(), table.entries())) ++found;
    }
    CHECK(found == 4);
    CHECK(ns.vertices.size() >= 4);
    // Every vertex is nonsignaling and synchronous as a correlation.
    for (const auto& v : ns.vertices) {
        const Correlation<Rational> p(sh, v);
        CHECK(is_synchronous(p, Rational(0)).ok);
        CHECK(is_nonsignaling(p, Rational(0)).ok);
    }
}
