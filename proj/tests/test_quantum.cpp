#include "syncorr/bell_search.hpp"
#include "syncorr/correlation.hpp"
#include "syncorr/errors.hpp"
#include "syncorr/quantum.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace syncorr;

namespace {

using Complex = std::complex<double>;

ComplexMatrix ket_projector(const Eigen::Vector2cd& v) { return v * v.adjoint(); }

std::vector<ComplexMatrix> basis_pvm_2() {
    ComplexMatrix e0 = ComplexMatrix::Zero(2, 2), e1 = ComplexMatrix::Zero(2, 2);
    e0(0, 0) = 1;
    e1(1, 1) = 1;
    return {e0, e1};
}

std::vector<ComplexMatrix> plusminus_pvm_2() {
    Eigen::Vector2cd plus, minus;
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    return {ket_projector(plus), ket_projector(minus)};
}

}  // namespace

TEST_CASE("measurement validation catches each defect") {
    CHECK_NOTHROW(validate_pvm({basis_pvm_2(), plusminus_pvm_2()}));

    ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(validate_pvm({{half, half}}), NotIdempotent);

    ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
    e0(0, 0) = 1;
    CHECK_THROWS_AS(validate_pvm({{e0, e0}}), NotComplete);

    ComplexMatrix nh = ComplexMatrix::Zero(2, 2);
    nh(0, 1) = 1;
    CHECK_THROWS_AS(validate_pvm({{nh, ComplexMatrix::Identity(2, 2) - nh}}), NotHermitian);

    CHECK_THROWS_AS(validate_pvm({}), DimensionMismatch);
}

TEST_CASE("shared-state correlation of identical measurements is diagonal") {
    const auto fam = validate_pvm({basis_pvm_2(), basis_pvm_2(), basis_pvm_2()});
    const auto p = correlation_me(fam);
    CHECK(is_synchronous(p, 1e-12).ok);
    CHECK(is_nonsignaling(p, 1e-12).ok);
    CHECK(is_symmetric(p, 1e-12));
    for (int xa = 0; xa < 3; ++xa)
        for (int xb = 0; xb < 3; ++xb) {
            CHECK(p(0, 0, xa, xb) == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(p(1, 1, xa, xb) == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(p(0, 1, xa, xb) == doctest::Approx(0.0).epsilon(1e-12));
        }
    const auto b = bell_values(w_coordinates(p), 1e-9);
    CHECK(b.j0 == doctest::Approx(0.0));
    CHECK(b.violated == BellInequality::None);
}

TEST_CASE("maximally entangled partner convention reproduces the trace formula") {
    std::mt19937_64 rng(7);
    const PVMFamily fam = random_pvm_family(3, 2, 2, rng);
    const auto direct = correlation_me(fam);

    GeneralQuantumStrategy s;
    s.da = s.db = 3;
    const Eigen::VectorXcd omega = maximally_entangled_state(3);
    s.state = omega * omega.adjoint();
    s.povms_a = fam.projectors;
    s.povms_b = conjugate_family(fam.projectors);
    const auto general = correlation_general(s);
    CHECK(max_entry_distance(direct, general) <= 1e-12);
}

TEST_CASE("general strategies validate their state") {
    GeneralQuantumStrategy s;
    s.da = s.db = 2;
    const Eigen::VectorXcd omega = maximally_entangled_state(2);
    s.state = 2.0 * (omega * omega.adjoint());  // trace 2
    s.povms_a = {basis_pvm_2()};
    s.povms_b = {basis_pvm_2()};
    CHECK_THROWS_AS(correlation_general(s), NotNormalized);

    s.state = ComplexMatrix::Zero(4, 4);
    s.state(0, 0) = 1.5;
    s.state(1, 1) = -0.5;  // Hermitian, trace 1, not PSD
    CHECK_THROWS_AS(correlation_general(s), NotPositiveSemidefinite);
}

TEST_CASE("unsharp measurements break synchronicity by one quarter") {
    ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
    GeneralQuantumStrategy s;
    s.da = s.db = 2;
    const Eigen::VectorXcd omega = maximally_entangled_state(2);
    s.state = omega * omega.adjoint();
    s.povms_a = {{half, half}};
    s.povms_b = {{half, half}};
    const auto p = correlation_general(s);
    CHECK(p(0, 1, 0, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_FALSE(is_synchronous(p, 0.1).ok);
    CHECK_THROWS_AS(decompose_me(omega, s.povms_a, s.povms_b), NotSynchronous);
}

TEST_CASE("schmidt decomposition of the standard entangled state") {
    const Eigen::VectorXcd omega = maximally_entangled_state(2);
    const auto sd = schmidt(omega, 2, 2);
    REQUIRE(sd.coefficients.size() == 2);
    CHECK(sd.coefficients[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(sd.coefficients[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(schmidt(2.0 * omega, 2, 2), NotNormalized);
    CHECK_THROWS_AS(schmidt(omega, 3, 2), DimensionMismatch);
}

TEST_CASE("single-block decomposition recovers the trace-formula correlation") {
    std::mt19937_64 rng(11);
    const PVMFamily fam = random_pvm_family(2, 3, 2, rng);
    const Eigen::VectorXcd omega = maximally_entangled_state(2);
    const auto blocks = decompose_me(omega, fam.projectors, conjugate_family(fam.projectors));
    REQUIRE(blocks.blocks.size() == 1);
    CHECK(blocks.blocks[0].weight == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(blocks.blocks[0].dimension == 2);
    CHECK(max_entry_distance(blocks.blocks[0].correlation, correlation_me(fam)) <= 1e-9);
    CHECK(blocks.residual <= 1e-9);
}

TEST_CASE("unequal coefficients split into weighted one-dimensional blocks") {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = std::sqrt(0.9);
    psi(3) = std::sqrt(0.1);
    const std::vector<std::vector<ComplexMatrix>> povms = {basis_pvm_2()};
    const auto blocks = decompose_me(psi, povms, conjugate_family(povms));
    REQUIRE(blocks.blocks.size() == 2);
    CHECK(blocks.blocks[0].weight == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(blocks.blocks[1].weight == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(blocks.blocks[0].dimension == 1);
    CHECK(blocks.blocks[1].dimension == 1);
}

TEST_CASE("ambiguous coefficient gaps are reported, not guessed") {
    const double a = 0.8, b = 0.8 + 5e-7;
    const double norm = std::sqrt(a * a + b * b);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = a / norm;
    psi(3) = b / norm;
    const std::vector<std::vector<ComplexMatrix>> povms = {basis_pvm_2()};
    CHECK_THROWS_AS(decompose_me(psi, povms, conjugate_family(povms), 1e-9), DegenerateGap);
}

TEST_CASE("plus/minus observables and their pairwise traces") {
    const auto fam = validate_pvm({basis_pvm_2(), plusminus_pvm_2()});
    const auto tr = observable_traces(fam);
    CHECK(tr.m_x[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tr.m_xy(0, 1) == doctest::Approx(0.0).epsilon(1e-12));  // tr(sigma_z sigma_x)/2
    CHECK(tr.m_xy(0, 0) == doctest::Approx(1.0).epsilon(1e-12));

    ComplexMatrix e0 = ComplexMatrix::Zero(3, 3), e1 = ComplexMatrix::Zero(3, 3),
                  e2 = ComplexMatrix::Zero(3, 3);
    e0(0, 0) = 1;
    e1(1, 1) = 1;
    e2(2, 2) = 1;
    const auto three = validate_pvm({{e0, e1, e2}});
    CHECK_THROWS_AS(observable_traces(three), OutcomeCountNotTwo);
    CHECK_THROWS_AS(bell_from_traces(tr), ShapeMismatch);
}

TEST_CASE("extremal measurement triple yields pairwise traces minus one half") {
    const auto& ref = reference_saturators().front();
    const auto fam = qubit_pvms(ref.angles);
    const auto tr = observable_traces(fam, 1e-12);
    CHECK(tr.m_xy(0, 1) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(tr.m_xy(0, 2) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(tr.m_xy(1, 2) == doctest::Approx(-0.5).epsilon(1e-12));
    const auto b = bell_from_traces(tr);
    CHECK(1.0 - b.j0 == doctest::Approx(-0.125).epsilon(1e-12));
    CHECK(b.violated == BellInequality::J0);
}

TEST_CASE("certificate sign patterns select the matching functional") {
    const auto fam = validate_pvm({basis_pvm_2(), basis_pvm_2(), basis_pvm_2()});
    const auto plus = tsirelson_certificate(fam, {1, 1, 1});
    CHECK(plus.functional == "1-J0");
    CHECK(plus.value == doctest::Approx(1.0).epsilon(1e-12));  // (3 sigma_z)^2 / 16 - 1/8
    CHECK(plus.residual <= 1e-12);

    // A global sign flip leaves the square unchanged.
    const auto flipped = tsirelson_certificate(fam, {-1, -1, -1});
    CHECK(flipped.functional == "1-J0");
    CHECK(flipped.value == doctest::Approx(plus.value).epsilon(1e-12));

    const auto& ref = reference_saturators().front();
    const auto extremal = qubit_pvms(ref.angles);
    const auto j1 = tsirelson_certificate(extremal, {-1, 1, 1});
    CHECK(j1.functional == "J1");
    CHECK(j1.value == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
    const auto j2 = tsirelson_certificate(extremal, {1, -1, 1});
    CHECK(j2.functional == "J2");
    const auto j3 = tsirelson_certificate(extremal, {1, 1, -1});
    CHECK(j3.functional == "J3");
    const auto j0 = tsirelson_certificate(extremal, {1, 1, 1});
    CHECK(j0.functional == "1-J0");
    CHECK(j0.value == doctest::Approx(-0.125).epsilon(1e-12));

    CHECK_THROWS_AS(tsirelson_certificate(fam, {0, 1, 1}), ValueOutOfRange);
}

TEST_CASE("random measurement families are reproducible and well formed") {
    std::mt19937_64 rng1(99), rng2(99), rng3(100);
    const auto a = random_pvm_family(4, 3, 2, rng1);
    const auto b = random_pvm_family(4, 3, 2, rng2);
    const auto c = random_pvm_family(4, 3, 2, rng3);
    REQUIRE(a.projectors.size() == 3);
    double same = 0, other = 0;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 2; ++y) {
            same = std::max(same, (a.projectors[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] -
                                   b.projectors[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)])
                                      .cwiseAbs()
                                      .maxCoeff());
            other = std::max(other, (a.projectors[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] -
                                     c.projectors[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)])
                                        .cwiseAbs()
                                        .maxCoeff());
        }
    CHECK(same == 0.0);
    CHECK(other > 1e-3);

    CHECK_THROWS_AS(random_pvm_family(1, 3, 2, rng1), ValueOutOfRange);
}
