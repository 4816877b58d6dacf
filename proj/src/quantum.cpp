#include "syncorr/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace syncorr {

namespace {

using Complex = std::complex<double>;

double max_abs(const ComplexMatrix& a) {
    double best = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) best = std::max(best, std::abs(a(i, j)));
    return best;
}

void check_hermitian(const ComplexMatrix& a, double tol, const char* what) {
    if (a.rows() != a.cols()) throw DimensionMismatch(std::string(what) + " is not square");
    const double dev = max_abs(a - a.adjoint().eval());
    if (dev > tol) throw NotHermitian(std::string(what) + " deviates from Hermitian by " +
                                      std::to_string(dev));
}

void check_psd(const ComplexMatrix& a, double tol, const char* what) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -tol)
        throw NotPositiveSemidefinite(std::string(what) + " has eigenvalue " + std::to_string(lo));
}

void check_povm_family(const std::vector<std::vector<ComplexMatrix>>& ops, int d, double tol,
                       const char* what) {
    for (const auto& question : ops) {
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (const ComplexMatrix& e : question) {
            if (e.rows() != d || e.cols() != d)
                throw DimensionMismatch(std::string(what) + " operator dimension mismatch");
            check_hermitian(e, tol, what);
            check_psd(e, tol, what);
            sum += e;
        }
        const double dev = max_abs(sum - ComplexMatrix::Identity(d, d));
        if (dev > tol)
            throw NotComplete(std::string(what) + " does not resolve the identity", dev);
    }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

PVMFamily validate_pvm(const std::vector<std::vector<ComplexMatrix>>& raw, double tol) {
    if (raw.empty() || raw.front().empty()) throw DimensionMismatch("empty operator family");
    const int d = static_cast<int>(raw.front().front().rows());
    const int n = static_cast<int>(raw.size());
    const int m = static_cast<int>(raw.front().size());

    for (const auto& question : raw) {
        if (static_cast<int>(question.size()) != m)
            throw DimensionMismatch("questions disagree on the outcome count");
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (const ComplexMatrix& e : question) {
            if (e.rows() != d || e.cols() != d)
                throw DimensionMismatch("projector dimension mismatch");
            check_hermitian(e, tol, "projector");
            const double idem = max_abs((e * e - e).eval());
            if (idem > tol) throw NotIdempotent("operator is not a projection", idem);
            sum += e;
        }
        const double dev = max_abs(sum - ComplexMatrix::Identity(d, d));
        if (dev > tol) throw NotComplete("projectors do not resolve the identity", dev);
    }
    return PVMFamily{d, n, m, raw};
}

Correlation<double> correlation_me(const PVMFamily& pvms, double tol) {
    const GameShape sh(pvms.n, pvms.m);
    std::vector<double> entries(static_cast<std::size_t>(sh.rows()) * sh.columns(), 0.0);
    double imag_dev = 0;
    for (int xa = 0; xa < pvms.n; ++xa)
        for (int xb = 0; xb < pvms.n; ++xb)
            for (int ya = 0; ya < pvms.m; ++ya)
                for (int yb = 0; yb < pvms.m; ++yb) {
                    const Complex t =
                        (pvms.projectors[static_cast<std::size_t>(xa)][static_cast<std::size_t>(ya)] *
                         pvms.projectors[static_cast<std::size_t>(xb)][static_cast<std::size_t>(yb)])
                            .trace() /
                        static_cast<double>(pvms.d);
                    imag_dev = std::max(imag_dev, std::abs(t.imag()));
                    entries[static_cast<std::size_t>(sh.row(ya, yb)) * sh.columns() +
                            sh.column(xa, xb)] = t.real();
                }
    if (imag_dev > tol)
        throw ImaginaryResidual("trace formula produced imaginary part", imag_dev);
    return validate_stochastic(std::move(entries), sh, tol);
}

Correlation<double> correlation_general(const GeneralQuantumStrategy& s, double tol) {
    if (s.state.rows() != s.da * s.db || s.state.cols() != s.da * s.db)
        throw DimensionMismatch("state dimension mismatch");
    check_hermitian(s.state, tol, "state");
    check_psd(s.state, tol, "state");
    const Complex tr = s.state.trace();
    if (std::abs(tr - Complex(1, 0)) > tol)
        throw NotNormalized("state trace deviates from 1 by " + std::to_string(std::abs(tr - Complex(1, 0))));
    if (s.povms_a.empty() || s.povms_b.empty() || s.povms_a.size() != s.povms_b.size())
        throw DimensionMismatch("players disagree on the question count");
    const int m = static_cast<int>(s.povms_a.front().size());
    for (const auto& q : s.povms_a)
        if (static_cast<int>(q.size()) != m) throw DimensionMismatch("outcome count mismatch");
    for (const auto& q : s.povms_b)
        if (static_cast<int>(q.size()) != m) throw DimensionMismatch("outcome count mismatch");
    check_povm_family(s.povms_a, s.da, tol, "left measurement");
    check_povm_family(s.povms_b, s.db, tol, "right measurement");

    const int n = static_cast<int>(s.povms_a.size());
    const GameShape sh(n, m);
    std::vector<double> entries(static_cast<std::size_t>(sh.rows()) * sh.columns(), 0.0);
    double imag_dev = 0;
    for (int xa = 0; xa < n; ++xa)
        for (int xb = 0; xb < n; ++xb)
            for (int ya = 0; ya < m; ++ya)
                for (int yb = 0; yb < m; ++yb) {
                    const ComplexMatrix op =
                        kron(s.povms_a[static_cast<std::size_t>(xa)][static_cast<std::size_t>(ya)],
                             s.povms_b[static_cast<std::size_t>(xb)][static_cast<std::size_t>(yb)]);
                    const Complex t = (s.state * op).trace();
                    imag_dev = std::max(imag_dev, std::abs(t.imag()));
                    entries[static_cast<std::size_t>(sh.row(ya, yb)) * sh.columns() +
                            sh.column(xa, xb)] = t.real();
                }
    if (imag_dev > tol)
        throw ImaginaryResidual("state-measurement trace produced imaginary part", imag_dev);
    return validate_stochastic(std::move(entries), sh, tol);
}

Eigen::VectorXcd maximally_entangled_state(int d) {
    if (d < 1) throw ValueOutOfRange("dimension must be positive");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d) * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) psi(static_cast<Eigen::Index>(j) * d + j) = amp;
    return psi;
}

std::vector<std::vector<ComplexMatrix>> conjugate_family(
    const std::vector<std::vector<ComplexMatrix>>& ops) {
    std::vector<std::vector<ComplexMatrix>> out(ops.size());
    for (std::size_t x = 0; x < ops.size(); ++x) {
        out[x].reserve(ops[x].size());
        for (const ComplexMatrix& e : ops[x]) out[x].push_back(e.conjugate());
    }
    return out;
}

SchmidtDecomposition schmidt(const Eigen::VectorXcd& psi, int da, int db, double tol) {
    if (psi.size() != static_cast<Eigen::Index>(da) * db)
        throw DimensionMismatch("state vector length is not dA*dB");
    const double norm_dev = std::abs(psi.norm() - 1.0);
    if (norm_dev > tol)
        throw NotNormalized("state norm deviates from 1 by " + std::to_string(norm_dev));

    ComplexMatrix coeff(da, db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) coeff(i, j) = psi(static_cast<Eigen::Index>(i) * db + j);

    Eigen::JacobiSVD<ComplexMatrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtDecomposition out;
    out.left = svd.matrixU();
    out.right = svd.matrixV().conjugate();
    const auto& sv = svd.singularValues();
    out.coefficients.assign(sv.data(), sv.data() + sv.size());
    return out;
}

namespace {

constexpr double kSchmidtEqualFactor = 100.0;  // gap <= factor*tol: same block

std::vector<std::vector<std::size_t>> group_coefficients(const std::vector<double>& s, double tol) {
    const double split_gap = std::sqrt(tol);
    const double drop_below = std::sqrt(tol);
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] <= drop_below) break;  // nonincreasing: the rest carry no weight
        if (!groups.empty()) {
            const double gap = s[groups.back().back()] - s[k];
            if (gap <= kSchmidtEqualFactor * tol) {
                groups.back().push_back(k);
                continue;
            }
            if (gap <= split_gap)
                throw DegenerateGap("coefficient gap " + std::to_string(gap) +
                                    " is too small to split and too large to merge");
        }
        groups.push_back({k});
    }
    return groups;
}

}  // namespace

SchmidtBlocks decompose_me(const Eigen::VectorXcd& psi,
                           const std::vector<std::vector<ComplexMatrix>>& povms_a,
                           const std::vector<std::vector<ComplexMatrix>>& povms_b, double tol) {
    if (povms_a.empty() || povms_a.front().empty()) throw DimensionMismatch("empty measurement family");
    const int da = static_cast<int>(povms_a.front().front().rows());
    const int db = static_cast<int>(povms_b.front().front().rows());

    GeneralQuantumStrategy strat;
    strat.da = da;
    strat.db = db;
    strat.state = psi * psi.adjoint();
    strat.povms_a = povms_a;
    strat.povms_b = povms_b;
    const Correlation<double> p = correlation_general(strat, tol);

    const auto sync = is_synchronous(p, tol);
    if (!sync.ok)
        throw NotSynchronous("strategy correlation is not synchronous; cannot split into "
                             "maximally entangled blocks");

    // Reduced states: rho_A = C C^dagger, rho_B = (C^dagger C)^T for the
    // coefficient matrix C of psi.
    ComplexMatrix coeff(da, db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) coeff(i, j) = psi(static_cast<Eigen::Index>(i) * db + j);
    const ComplexMatrix rho_a = coeff * coeff.adjoint();
    const ComplexMatrix rho_b = (coeff.adjoint() * coeff).transpose();

    double comm_dev = 0;
    for (const auto& q : povms_a)
        for (const ComplexMatrix& e : q)
            comm_dev = std::max(comm_dev, max_abs((e * rho_a - rho_a * e).eval()));
    for (const auto& q : povms_b)
        for (const ComplexMatrix& f : q)
            comm_dev = std::max(comm_dev, max_abs((f * rho_b - rho_b * f).eval()));
    if (comm_dev > tol)
        throw CommutationViolation("measurements do not commute with the reduced states",
                                   comm_dev);

    const SchmidtDecomposition sd = schmidt(psi, da, db, tol);
    const auto groups = group_coefficients(sd.coefficients, tol);
    if (groups.empty()) throw NotNormalized("state has no Schmidt weight");

    SchmidtBlocks out;
    std::vector<double> recombined(p.entries().size(), 0.0);
    const double block_tol = std::sqrt(tol);
    for (const auto& group : groups) {
        const int dim = static_cast<int>(group.size());
        ComplexMatrix basis(da, dim);  // left Schmidt vectors of this block
        for (int c = 0; c < dim; ++c) basis.col(c) = sd.left.col(static_cast<Eigen::Index>(group[static_cast<std::size_t>(c)]));

        std::vector<std::vector<ComplexMatrix>> compressed(povms_a.size());
        for (std::size_t x = 0; x < povms_a.size(); ++x)
            for (const ComplexMatrix& e : povms_a[x])
                compressed[x].push_back((basis.adjoint() * e * basis).eval());
        const PVMFamily block_pvms = validate_pvm(compressed, block_tol);

        SchmidtBlock block{0.0, dim, block_pvms, correlation_me(block_pvms, block_tol)};
        for (std::size_t k : group)
            block.weight += sd.coefficients[k] * sd.coefficients[k];
        for (std::size_t i = 0; i < recombined.size(); ++i)
            recombined[i] += block.weight * block.correlation.entries()[i];
        out.blocks.push_back(std::move(block));
    }

    double weight_sum = 0;
    for (const SchmidtBlock& b : out.blocks) weight_sum += b.weight;
    if (std::abs(weight_sum - 1.0) > std::max(tol * 100, 1e-12 * static_cast<double>(da)))
        throw WeightSumViolation("block weights sum to " + std::to_string(weight_sum));

    out.residual = 0;
    for (std::size_t i = 0; i < recombined.size(); ++i)
        out.residual = std::max(out.residual, std::abs(recombined[i] - p.entries()[i]));
    if (out.residual > tol)
        throw CertificateMismatch("block recombination misses the input correlation",
                                  out.residual);
    return out;
}

ObservableTraces observable_traces(const PVMFamily& pvms, double tol) {
    if (pvms.m != 2) throw OutcomeCountNotTwo("plus/minus observables need two outcomes");
    ObservableTraces out;
    out.d = pvms.d;
    std::vector<ComplexMatrix> obs;
    obs.reserve(static_cast<std::size_t>(pvms.n));
    for (int x = 0; x < pvms.n; ++x)
        obs.push_back(pvms.projectors[static_cast<std::size_t>(x)][0] -
                      pvms.projectors[static_cast<std::size_t>(x)][1]);

    out.m_x.resize(static_cast<std::size_t>(pvms.n));
    out.m_xy = Eigen::MatrixXd(pvms.n, pvms.n);
    double imag_dev = 0;
    for (int x = 0; x < pvms.n; ++x) {
        const Complex t = obs[static_cast<std::size_t>(x)].trace() / static_cast<double>(pvms.d);
        imag_dev = std::max(imag_dev, std::abs(t.imag()));
        out.m_x[static_cast<std::size_t>(x)] = t.real();
        for (int y = 0; y < pvms.n; ++y) {
            const Complex txy =
                (obs[static_cast<std::size_t>(x)] * obs[static_cast<std::size_t>(y)]).trace() /
                static_cast<double>(pvms.d);
            imag_dev = std::max(imag_dev, std::abs(txy.imag()));
            out.m_xy(x, y) = txy.real();
        }
    }
    if (imag_dev > tol) throw ImaginaryResidual("observable traces have imaginary part", imag_dev);
    for (int x = 0; x < pvms.n; ++x)
        if (std::abs(out.m_xy(x, x) - 1.0) > 100 * tol)
            throw NumericalFailure("observable square deviates from the identity");
    return out;
}

BellReport<double> bell_from_traces(const ObservableTraces& traces, double tol) {
    if (traces.m_x.size() != 3) throw ShapeMismatch("trace bridge requires three questions");
    const double m01 = traces.m_xy(0, 1);
    const double m02 = traces.m_xy(0, 2);
    const double m12 = traces.m_xy(1, 2);
    const double one_minus_j0 = 0.25 * (1 + m01 + m02 + m12);
    return classify_bell(1.0 - one_minus_j0, 0.25 * (1 - m01 - m02 + m12),
                         0.25 * (1 - m01 + m02 - m12), 0.25 * (1 + m01 - m02 - m12), tol);
}

TsirelsonCertificate tsirelson_certificate(const PVMFamily& pvms, std::array<int, 3> signs,
                                           double tol) {
    if (pvms.n != 3) throw ShapeMismatch("certificate requires three questions");
    if (pvms.m != 2) throw OutcomeCountNotTwo("certificate requires two outcomes");
    for (int s : signs)
        if (s != 1 && s != -1) throw ValueOutOfRange("signs must be +1 or -1");

    ComplexMatrix total = ComplexMatrix::Zero(pvms.d, pvms.d);
    for (int x = 0; x < 3; ++x)
        total += static_cast<double>(signs[static_cast<std::size_t>(x)]) *
                 (pvms.projectors[static_cast<std::size_t>(x)][0] -
                  pvms.projectors[static_cast<std::size_t>(x)][1]);
    const Complex tr = (total * total).trace();
    if (std::abs(tr.imag()) > tol)
        throw ImaginaryResidual("squared observable trace has imaginary part", std::abs(tr.imag()));

    TsirelsonCertificate cert;
    cert.value = tr.real() / (8.0 * pvms.d) - 0.125;

    // A global sign flip leaves the square unchanged, so normalize to at most
    // one negative sign; all-positive certifies 1-J0, a lone negative at
    // position k certifies J_{k+1}.
    std::array<int, 3> norm = signs;
    int negatives = 0;
    for (int s : norm) negatives += (s < 0) ? 1 : 0;
    if (negatives >= 2)
        for (int& s : norm) s = -s;
    const BellReport<double> report = bell_from_traces(observable_traces(pvms, tol), tol);
    int lone = -1;
    for (int x = 0; x < 3; ++x)
        if (norm[static_cast<std::size_t>(x)] < 0) lone = x;
    if (lone < 0) {
        cert.functional = "1-J0";
        cert.functional_value = 1.0 - report.j0;
    } else if (lone == 0) {
        cert.functional = "J1";
        cert.functional_value = report.j1;
    } else if (lone == 1) {
        cert.functional = "J2";
        cert.functional_value = report.j2;
    } else {
        cert.functional = "J3";
        cert.functional_value = report.j3;
    }
    cert.residual = std::abs(cert.value - cert.functional_value);
    if (cert.residual > tol)
        throw CertificateMismatch("trace certificate disagrees with the functional",
                                  cert.residual);
    return cert;
}

PVMFamily random_pvm_family(int d, int n, int m, std::mt19937_64& rng) {
    if (d < m) throw ValueOutOfRange("dimension must be at least the outcome count");
    if (n < 1 || m < 1) throw ValueOutOfRange("need at least one question and outcome");

    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<ComplexMatrix>> raw(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        ComplexMatrix g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
        Eigen::HouseholderQR<ComplexMatrix> qr(g);
        ComplexMatrix q = qr.householderQ();
        const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < d; ++j) {
            const Complex diag = r(j, j);
            if (std::abs(diag) > 0) q.col(j) *= diag / std::abs(diag);
        }

        // Random composition of d columns into m nonempty consecutive groups.
        std::vector<int> cuts{0};
        std::vector<int> interior;
        for (int c = 1; c < d; ++c) interior.push_back(c);
        for (int pick = 0; pick < m - 1; ++pick) {
            std::uniform_int_distribution<std::size_t> u(0, interior.size() - 1);
            const std::size_t at = u(rng);
            cuts.push_back(interior[at]);
            interior.erase(interior.begin() + static_cast<std::ptrdiff_t>(at));
        }
        cuts.push_back(d);
        std::sort(cuts.begin(), cuts.end());

        for (int g_i = 0; g_i + 1 < static_cast<int>(cuts.size()); ++g_i) {
            ComplexMatrix proj = ComplexMatrix::Zero(d, d);
            for (int c = cuts[static_cast<std::size_t>(g_i)]; c < cuts[static_cast<std::size_t>(g_i) + 1]; ++c)
                proj += q.col(c) * q.col(c).adjoint();
            raw[static_cast<std::size_t>(x)].push_back(std::move(proj));
        }
    }
    return validate_pvm(raw, 1e-9);
}

}  // namespace syncorr
