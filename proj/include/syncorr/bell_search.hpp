#pragma once

#include "syncorr/correlation.hpp"
#include "syncorr/polytope.hpp"
#include "syncorr/quantum.hpp"
#include "syncorr/scalar.hpp"

#include <vector>

namespace syncorr {

/// Parameters of the qubit strategy family: the second and third question's
/// measurement kets are (cos(alpha), e^{i beta} sin(alpha)) and
/// (cos(gamma), e^{i delta} sin(gamma)) against the fixed first question.
struct BlochAngles {
    double alpha = 0, beta = 0, gamma = 0, delta = 0;
};

/// Substituted coordinates rho = alpha + gamma, sigma = alpha - gamma (named
/// to avoid clashing with the density-operator symbol), with beta gauged to 0.
struct SumDiffAngles {
    double rho_ang = 0, sigma_ang = 0, delta = 0;
};

enum class BellTarget { J0, J1, J2, J3 };

const char* bell_target_name(BellTarget t);

/// Objective convention: for J0 the minimized quantity is 1 - J0 (so the
/// optimum -1/8 certifies J0 <= 9/8); for J1..J3 it is Jk itself.
struct SearchResult {
    BellTarget target;
    double min_value = 0;
    std::vector<SumDiffAngles> argmin;       // canonicalized, deduplicated, sorted
    Correlation<double> canonical_matrix;    // induced by the first argmin
    std::size_t distinct_matrices = 0;       // across all argmin at 1e-6 entrywise
};

BlochAngles to_bloch(const SumDiffAngles& s);
SumDiffAngles to_sumdiff(const BlochAngles& a);

/// The three qubit measurements of the family (two outcomes each).
PVMFamily qubit_pvms(const BlochAngles& a);

/// Analytic w-coordinates of the family's correlation.
WCoordinates<double> w_closed_form(const BlochAngles& a);

/// Analytic Bell values of the family's correlation.
BellReport<double> j_closed_form(const BlochAngles& a);
BellReport<double> j_closed_form(const SumDiffAngles& s);

/// Grid search over the substituted angles followed by coordinate-descent
/// refinement until the step drops below refine_tol.
SearchResult minimize(BellTarget target, int grid_steps, double refine_tol);

/// One hard-coded extremal correlation per functional (entries in eighths)
/// with a generating angle triple; each violates exactly its own inequality
/// by 1/8.
struct ReferenceSaturator {
    BellTarget target;
    BlochAngles angles;
    Correlation<Rational> exact;
};

const std::vector<ReferenceSaturator>& reference_saturators();

}  // namespace syncorr
