#include "syncorr/bell_search.hpp"
#include "syncorr/correlation.hpp"
#include "syncorr/errors.hpp"
#include "syncorr/polytope.hpp"
#include "syncorr/quantum.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace syncorr;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("angle substitutions round trip") {
    const SumDiffAngles s{0.7, -0.3, 1.9};
    const BlochAngles a = to_bloch(s);
    CHECK(a.alpha == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(a.gamma == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.beta == 0.0);
    const SumDiffAngles back = to_sumdiff(a);
    CHECK(back.rho_ang == doctest::Approx(s.rho_ang).epsilon(1e-12));
    CHECK(back.sigma_ang == doctest::Approx(s.sigma_ang).epsilon(1e-12));
    CHECK(back.delta == doctest::Approx(s.delta).epsilon(1e-12));
}

TEST_CASE("closed forms agree with the measurement simulation") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 2 * kPi);
    for (int trial = 0; trial < 25; ++trial) {
        const BlochAngles a{dist(rng), dist(rng), dist(rng), dist(rng)};
        const auto fam = qubit_pvms(a);
        const auto p = correlation_me(fam, 1e-12);
        const auto w_direct = w_coordinates(p);
        const auto w_formula = w_closed_form(a);
        for (int i = 0; i < 9; ++i)
            CHECK(w_formula.w[static_cast<std::size_t>(i)] ==
                  doctest::Approx(w_direct.w[static_cast<std::size_t>(i)]).epsilon(1e-10));

        const auto jb = j_closed_form(a);
        const auto jw = bell_values(w_direct, 1e-9);
        CHECK(jb.j0 == doctest::Approx(jw.j0).epsilon(1e-10));
        CHECK(jb.j1 == doctest::Approx(jw.j1).epsilon(1e-10));
        CHECK(jb.j2 == doctest::Approx(jw.j2).epsilon(1e-10));
        CHECK(jb.j3 == doctest::Approx(jw.j3).epsilon(1e-10));
    }
}

TEST_CASE("substituted closed form matches the general one where it applies") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> dist(0.0, 2 * kPi);
    for (int trial = 0; trial < 25; ++trial) {
        const SumDiffAngles s{dist(rng), dist(rng), dist(rng)};
        const auto js = j_closed_form(s);
        const auto jb = j_closed_form(to_bloch(s));
        CHECK(js.j0 == doctest::Approx(jb.j0).epsilon(1e-10));
        CHECK(js.j1 == doctest::Approx(jb.j1).epsilon(1e-10));
        CHECK(js.j2 == doctest::Approx(jb.j2).epsilon(1e-10));
        CHECK(js.j3 == doctest::Approx(jb.j3).epsilon(1e-10));
    }
}

TEST_CASE("hand-checked objective values") {
    // All angles zero: both nontrivial kets equal the reference direction.
    const BlochAngles zero{};
    const auto w = w_closed_form(zero);
    const double expected[9] = {0.5, 0, 0, 0, 0.5, 0.5, 0, 0.5, 0.5};
    for (int i = 0; i < 9; ++i)
        CHECK(w.w[static_cast<std::size_t>(i)] ==
              doctest::Approx(expected[i]).epsilon(1e-12));
    const auto j = j_closed_form(zero);
    CHECK(1.0 - j.j0 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(j.j1 == doctest::Approx(1.0).epsilon(1e-12));

    // The substituted minimizer of 1 - J0.
    const auto at_min = j_closed_form(SumDiffAngles{0.0, kPi / 3, 0.0});
    CHECK(1.0 - at_min.j0 == doctest::Approx(-0.125).epsilon(1e-12));

    // A quarter-turn relative phase.
    const auto quarter = j_closed_form(BlochAngles{kPi / 4, 0.0, kPi / 4, kPi / 2});
    CHECK(1.0 - quarter.j0 == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("reference saturators are exact extremal tables") {
    const auto& refs = reference_saturators();
    REQUIRE(refs.size() == 4);
    const BellTarget order[4] = {BellTarget::J0, BellTarget::J1, BellTarget::J2, BellTarget::J3};
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(refs[k].target == order[k]);
        const auto& p = refs[k].exact;
        CHECK(is_synchronous(p, Rational(0)).ok);
        CHECK(is_nonsignaling(p, Rational(0)).ok);
        CHECK(is_symmetric(p, Rational(0)));
        const auto b = bell_values(w_coordinates(p), Rational(0));
        CHECK(b.magnitude == Rational(1, 8));
        // The generating angles reproduce the exact table numerically.
        const auto sim = correlation_me(qubit_pvms(refs[k].angles), 1e-12);
        CHECK(max_entry_distance(sim, to_float(p).value) <= 1e-12);
    }
}

TEST_CASE("minimization reaches the quantum extreme for every target") {
    for (const auto& ref : reference_saturators()) {
        const SearchResult res = minimize(ref.target, 64, 1e-8);
        CHECK(res.min_value == doctest::Approx(-0.125).epsilon(1e-8));
        CHECK(res.distinct_matrices == 1);
        CHECK(max_entry_distance(res.canonical_matrix, to_float(ref.exact).value) <= 1e-7);
        CHECK_FALSE(res.argmin.empty());
        // Every reported minimizer actually attains the minimum.
        for (const auto& s : res.argmin) {
            const auto j = j_closed_form(s);
            const double val = ref.target == BellTarget::J0   ? 1.0 - j.j0
                               : ref.target == BellTarget::J1 ? j.j1
                               : ref.target == BellTarget::J2 ? j.j2
                                                              : j.j3;
            CHECK(val == doctest::Approx(-0.125).epsilon(1e-7));
        }
    }
}

TEST_CASE("the J0 search finds the known eight minimizers at grid 128") {
    const SearchResult res = minimize(BellTarget::J0, 128, 1e-10);
    CHECK(res.argmin.size() == 8);
    // Known family: (0, +-pi/3, 0), (pi, +-2pi/3, 0) and the delta = pi
    // mirror images with rho and sigma exchanged roles.
    auto contains = [&](double r, double s, double d) {
        for (const auto& m : res.argmin) {
            const double dr = std::remainder(m.rho_ang - r, 2 * kPi);
            const double ds = std::remainder(m.sigma_ang - s, 2 * kPi);
            const double dd = std::remainder(m.delta - d, 2 * kPi);
            if (std::abs(dr) < 1e-5 && std::abs(ds) < 1e-5 && std::abs(dd) < 1e-5) return true;
        }
        return false;
    };
    CHECK(contains(0, kPi / 3, 0));
    CHECK(contains(0, -kPi / 3, 0));
    CHECK(contains(kPi, 2 * kPi / 3, 0));
    CHECK(contains(kPi, -2 * kPi / 3, 0));
    CHECK(contains(kPi / 3, 0, kPi));
    CHECK(contains(-kPi / 3, 0, kPi));
    CHECK(contains(2 * kPi / 3, kPi, kPi));
    CHECK(contains(-2 * kPi / 3, kPi, kPi));
}

TEST_CASE("search parameter validation") {
    CHECK_THROWS_AS(minimize(BellTarget::J0, 8, 1e-8), ValueOutOfRange);
    CHECK_THROWS_AS(minimize(BellTarget::J0, 64, 0.0), ValueOutOfRange);
}
