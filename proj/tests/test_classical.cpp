#include "syncorr/bell_search.hpp"
#include "syncorr/classical.hpp"
#include "syncorr/correlation.hpp"
#include "syncorr/errors.hpp"
#include "syncorr/simplex.hpp"

#include <doctest.h>

#include <vector>

using namespace syncorr;

TEST_CASE("phase-one simplex finds feasible combinations") {
    // x1 * (1,0) + x2 * (0,1) + x3 * (1,1) = (1,1), x >= 0 : feasible.
    std::vector<std::vector<Rational>> cols = {{Rational(1), Rational(0)},
                                               {Rational(0), Rational(1)},
                                               {Rational(1), Rational(1)}};
    const auto res = solve_feasibility<Rational>(cols, {Rational(1), Rational(1)}, Rational(0));
    REQUIRE(res.feasible);
    Rational r0(0), r1(0);
    for (std::size_t j = 0; j < 3; ++j) {
        r0 += res.solution[j] * cols[j][0];
        r1 += res.solution[j] * cols[j][1];
    }
    CHECK(r0 == Rational(1));
    CHECK(r1 == Rational(1));
}

TEST_CASE("phase-one simplex certifies infeasibility with a Farkas vector") {
    // Columns all have coordinate sum 1 but the target has sum 2: infeasible
    // once the total-mass row pins sum x = 1.
    std::vector<std::vector<Rational>> cols = {{Rational(1), Rational(0), Rational(1)},
                                               {Rational(0), Rational(1), Rational(1)}};
    const std::vector<Rational> rhs = {Rational(1), Rational(1), Rational(1)};
    const auto res = solve_feasibility<Rational>(cols, rhs, Rational(0));
    REQUIRE_FALSE(res.feasible);
    REQUIRE(res.farkas.size() == 3);
    // y^T A <= 0 for every column, y^T b > 0: checked again here from scratch.
    for (const auto& col : cols) {
        Rational dot(0);
        for (std::size_t i = 0; i < col.size(); ++i) dot += res.farkas[i] * col[i];
        CHECK(dot <= Rational(0));
    }
    Rational ydotb(0);
    for (std::size_t i = 0; i < rhs.size(); ++i) ydotb += res.farkas[i] * rhs[i];
    CHECK(ydotb > Rational(0));
}

TEST_CASE("point masses and mixtures are classical with reproducing witnesses") {
    const GameShape sh(3, 2);
    const auto p = from_function<Rational>({1, 0, 1}, sh);
    const auto cert = classical_membership(p, Rational(0));
    REQUIRE(cert.verdict == Verdict::Classical);
    REQUIRE(cert.distribution.has_value());
    REQUIRE(cert.distribution->weights.size() == 1);
    CHECK(cert.distribution->weights[0].first == 5);  // binary 101
    CHECK(cert.distribution->weights[0].second == Rational(1));

    const auto a = from_function<Rational>({0, 0, 0}, sh);
    const auto b = from_function<Rational>({1, 1, 1}, sh);
    const auto mix = convex_combine<Rational>({{Rational(1, 3), a}, {Rational(2, 3), b}},
                                              Rational(0));
    const auto cert2 = classical_membership(mix, Rational(0));
    CHECK(cert2.verdict == Verdict::Classical);
}

TEST_CASE("extremal quantum tables are rejected with a verified functional") {
    for (const auto& ref : reference_saturators()) {
        const auto cert = classical_membership(ref.exact, Rational(0));
        REQUIRE(cert.verdict == Verdict::NotClassical);
        REQUIRE(cert.functional.has_value());
        CHECK(cert.functional->margin > Rational(0));
        // Integer-scaled certificate: every coefficient and the bound integral.
        for (const auto& c : cert.functional->coefficients)
            CHECK(boost::multiprecision::denominator(c) == 1);
        CHECK(boost::multiprecision::denominator(cert.functional->bound) == 1);
    }
}

TEST_CASE("membership in float mode agrees with exact mode") {
    const auto& ref = reference_saturators().front();
    const auto pf = to_float(ref.exact);
    REQUIRE(pf.lossless);  // eighths are dyadic
    const auto cert = classical_membership(pf.value, 1e-9);
    CHECK(cert.verdict == Verdict::NotClassical);

    const GameShape sh(3, 2);
    const auto mixed = convex_combine<double>(
        {{0.25, from_function<double>({0, 0, 0}, sh)}, {0.75, from_function<double>({0, 1, 0}, sh)}},
        1e-9);
    const auto cert2 = classical_membership(mixed, 1e-9);
    CHECK(cert2.verdict == Verdict::Classical);
}

TEST_CASE("membership requires synchronicity") {
    const GameShape sh(1, 2);
    const Rational h(1, 2);
    const Correlation<Rational> bad(sh, {Rational(0), h, h, Rational(0)});
    CHECK_THROWS_AS(classical_membership(bad, Rational(0)), NotSynchronous);
}

TEST_CASE("two-input decomposition recovers the generating distribution") {
    // Point mass at (0,1): both players answer 0 on question 0 and 1 on
    // question 1, i.e. the deterministic strategy f = (0,1).
    const int m = 2;
    std::vector<Rational> u(4, Rational(0));
    u[1] = Rational(1);  // u(0,1) = 1
    const auto [p, data] = two_point_classical(u, m, Rational(0));
    CHECK(is_symmetric(p, Rational(0)));
    CHECK(data.theta[0] == Rational(1));
    CHECK(data.phi[1] == Rational(1));
    const auto mu = two_input_decompose(p, Rational(0));
    REQUIRE(mu.weights.size() == 1);
    CHECK(mu.weights[0].first == 1);  // function index of (0,1)
    CHECK(mu.weights[0].second == Rational(1));

    // A fair mixture over all four strategies: u uniform.
    std::vector<Rational> uu(4, Rational(1, 4));
    const auto [q, qdata] = two_point_classical(uu, m, Rational(0));
    (void)qdata;
    const auto mu2 = two_input_decompose(q, Rational(0));
    CHECK(mu2.weights.size() == 4);
    for (const auto& [idx, w] : mu2.weights) CHECK(w == Rational(1, 4));
}

TEST_CASE("asymmetric two-question construction is rejected") {
    // u uniform but v concentrated on the diagonal: compatible marginals
    // (all one-half), yet v differs from the transpose of u.
    const int m = 2;
    const std::vector<Rational> u(4, Rational(1, 4));
    std::vector<Rational> v(4, Rational(0));
    v[0] = Rational(1, 2);
    v[3] = Rational(1, 2);
    const auto [p, data] = two_point_nonsignaling(u, v, m, Rational(0));
    (void)data;
    CHECK(is_synchronous(p, Rational(0)).ok);
    CHECK(is_nonsignaling(p, Rational(0)).ok);
    CHECK_FALSE(is_symmetric(p, Rational(0)));
    CHECK_THROWS_AS(two_input_decompose(p, Rational(0)), NotSymmetric);
}

TEST_CASE("two-question construction validates its tables") {
    const int m = 2;
    std::vector<Rational> u(4, Rational(0));
    u[0] = Rational(1);  // point mass at (0,0)
    std::vector<Rational> v(4, Rational(0));
    v[3] = Rational(1);  // point mass at (1,1): incompatible marginals
    CHECK_THROWS_AS(two_point_nonsignaling(u, v, m, Rational(0)), MarginalMismatch);

    std::vector<Rational> negative(4, Rational(1, 2));
    negative[1] = Rational(-1, 2);
    negative[0] = Rational(1, 2);
    CHECK_THROWS_AS(two_point_nonsignaling(negative, v, m, Rational(0)), ValueOutOfRange);

    const std::vector<Rational> wrong_size(2, Rational(1, 2));
    CHECK_THROWS_AS(two_point_classical(wrong_size, m, Rational(0)), DimensionMismatch);

    // Decomposition preconditions: wrong question count and signaling input.
    const auto p3 = from_function<Rational>({0, 1, 0}, GameShape(3, 2));
    CHECK_THROWS_AS(two_input_decompose(p3, Rational(0)), DimensionMismatch);
}
