#pragma once

#include "syncorr/correlation.hpp"
#include "syncorr/errors.hpp"
#include "syncorr/polytope.hpp"

#include <Eigen/Dense>

#include <array>
#include <random>
#include <string>
#include <vector>

namespace syncorr {

using ComplexMatrix = Eigen::MatrixXcd;

/// One projection-valued measure per question, all acting on C^d with the
/// same number of outcomes.
struct PVMFamily {
    int d = 0;  // Hilbert-space dimension
    int n = 0;  // questions
    int m = 0;  // outcomes
    std::vector<std::vector<ComplexMatrix>> projectors;  // [question][outcome]
};

/// Arbitrary bipartite strategy: a density operator on the product space
/// (basis |i>|j> at index i*dB + j) and per-question POVMs for each player.
struct GeneralQuantumStrategy {
    int da = 0, db = 0;
    ComplexMatrix state;  // (da*db) x (da*db)
    std::vector<std::vector<ComplexMatrix>> povms_a;  // [question][outcome], da x da
    std::vector<std::vector<ComplexMatrix>> povms_b;  // [question][outcome], db x db
};

struct SchmidtDecomposition {
    std::vector<double> coefficients;  // nonincreasing, nonnegative
    ComplexMatrix left;                // columns = left vectors
    ComplexMatrix right;               // columns = right vectors
};

struct SchmidtBlock {
    double weight = 0;      // multiplicity times squared coefficient
    int dimension = 0;      // multiplicity of the shared coefficient
    PVMFamily strategy;     // measurements compressed to the block
    Correlation<double> correlation;
};

struct SchmidtBlocks {
    std::vector<SchmidtBlock> blocks;
    double residual = 0;  // max entrywise recombination error
};

struct ObservableTraces {
    int d = 0;
    std::vector<double> m_x;  // normalized traces of the +/-1 observables
    Eigen::MatrixXd m_xy;     // normalized traces of pairwise products
};

struct TsirelsonCertificate {
    double value = 0;             // (1/(8d)) tr((s0 M0 + s1 M1 + s2 M2)^2) - 1/8
    double functional_value = 0;  // the matching affine expression in the traces
    double residual = 0;          // |value - functional_value|
    std::string functional;       // "1-J0", "J1", "J2", or "J3"
};

/// Checks Hermiticity, idempotence, and completeness of each question's
/// operators within tol and packages them.
PVMFamily validate_pvm(const std::vector<std::vector<ComplexMatrix>>& raw, double tol = 1e-9);

/// The maximally-entangled-state correlation p(yA,yB|xA,xB) =
/// (1/d) Re tr(E^xA_yA E^xB_yB), with the imaginary residual asserted small.
Correlation<double> correlation_me(const PVMFamily& pvms, double tol = 1e-9);

/// The general tensor-product correlation p = tr(rho (E tensor F)).
Correlation<double> correlation_general(const GeneralQuantumStrategy& s, double tol = 1e-9);

/// (1/sqrt(d)) sum_j |j>|j> as a vector on C^d tensor C^d.
Eigen::VectorXcd maximally_entangled_state(int d);

/// The fixed partner convention: measuring the maximally entangled state with
/// (E, conj(E)) reproduces correlation_me.
std::vector<std::vector<ComplexMatrix>> conjugate_family(
    const std::vector<std::vector<ComplexMatrix>>& ops);

/// Schmidt decomposition of a unit vector on C^dA tensor C^dB.
SchmidtDecomposition schmidt(const Eigen::VectorXcd& psi, int da, int db, double tol = 1e-9);

/// Splits a synchronous strategy on a pure state into maximally entangled
/// blocks: one per group of equal Schmidt coefficients, each with its
/// compressed PVM family, weight, and trace-formula correlation. The convex
/// recombination is verified against the input correlation.
SchmidtBlocks decompose_me(const Eigen::VectorXcd& psi,
                           const std::vector<std::vector<ComplexMatrix>>& povms_a,
                           const std::vector<std::vector<ComplexMatrix>>& povms_b,
                           double tol = 1e-9);

/// M_x = E^x_0 - E^x_1 and the normalized traces m_x, m_xy.
ObservableTraces observable_traces(const PVMFamily& pvms, double tol = 1e-9);

/// The four Bell functionals as affine expressions in (m01, m02, m12).
BellReport<double> bell_from_traces(const ObservableTraces& traces, double tol = 1e-9);

/// Evaluates the sum-of-squares certificate for the sign pattern and checks
/// it against the matching functional.
TsirelsonCertificate tsirelson_certificate(const PVMFamily& pvms, std::array<int, 3> signs,
                                           double tol = 1e-9);

/// Haar-random PVM family: Ginibre -> QR -> columns partitioned into m
/// rank-sum projectors (uniform random split sizes, each nonempty).
PVMFamily random_pvm_family(int d, int n, int m, std::mt19937_64& rng);

}  // namespace syncorr
