#include "syncorr/bell_search.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace syncorr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r == kTwoPi) r = 0;  // fmod dust
    return r;
}

double circular_distance(double a, double b) {
    const double d = std::abs(wrap_angle(a) - wrap_angle(b));
    return std::min(d, kTwoPi - d);
}

/// Every objective is cos(delta) * A(rho, sigma) + B(rho, sigma).
struct SeparableObjective {
    BellTarget target;

    double a_term(double rho, double sigma) const {
        const double cr = std::cos(rho), cs = std::cos(sigma);
        const double diff = (cs * cs - cr * cr) / 4.0;
        return (target == BellTarget::J0 || target == BellTarget::J1) ? diff : -diff;
    }
    double b_term(double rho, double sigma) const {
        const double cr = std::cos(rho), cs = std::cos(sigma);
        const double sr = std::sin(rho), ss = std::sin(sigma);
        switch (target) {
            case BellTarget::J0: return (cr * cr + cs * cs) / 4.0 - cr * cs / 2.0;
            case BellTarget::J1: return (cr * cr + cs * cs) / 4.0 + cr * cs / 2.0;
            case BellTarget::J2: return (sr * sr + ss * ss) / 4.0 - sr * ss / 2.0;
            case BellTarget::J3: return (sr * sr + ss * ss) / 4.0 + sr * ss / 2.0;
        }
        return 0;
    }
    double operator()(const SumDiffAngles& s) const {
        return std::cos(s.delta) * a_term(s.rho_ang, s.sigma_ang) + b_term(s.rho_ang, s.sigma_ang);
    }
};

}  // namespace

const char* bell_target_name(BellTarget t) {
    switch (t) {
        case BellTarget::J0: return "J0";
        case BellTarget::J1: return "J1";
        case BellTarget::J2: return "J2";
        case BellTarget::J3: return "J3";
    }
    return "J0";
}

BlochAngles to_bloch(const SumDiffAngles& s) {
    return BlochAngles{(s.rho_ang + s.sigma_ang) / 2.0, 0.0, (s.rho_ang - s.sigma_ang) / 2.0,
                       s.delta};
}

SumDiffAngles to_sumdiff(const BlochAngles& a) {
    return SumDiffAngles{a.alpha + a.gamma, a.alpha - a.gamma, a.delta - a.beta};
}

PVMFamily qubit_pvms(const BlochAngles& a) {
    using Complex = std::complex<double>;
    auto ket_projector = [](double theta, double phase) {
        Eigen::Vector2cd ket;
        ket << Complex(std::cos(theta), 0.0),
            Complex(std::cos(phase), std::sin(phase)) * std::sin(theta);
        return ComplexMatrix(ket * ket.adjoint());
    };
    const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
    ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
    e0(1, 1) = Complex(1.0, 0.0);
    const ComplexMatrix e1 = ket_projector(a.alpha, a.beta);
    const ComplexMatrix e2 = ket_projector(a.gamma, a.delta);
    return validate_pvm({{eye - e0, e0}, {eye - e1, e1}, {eye - e2, e2}}, 1e-12);
}

WCoordinates<double> w_closed_form(const BlochAngles& a) {
    const double sa = std::sin(a.alpha), ca = std::cos(a.alpha);
    const double sg = std::sin(a.gamma), cg = std::cos(a.gamma);
    const double overlap = ca * ca * cg * cg + sa * sa * sg * sg +
                           2.0 * std::cos(a.delta - a.beta) * sa * ca * sg * cg;
    WCoordinates<double> w;
    w.w = {0.5,
           0.5 * sa * sa,
           0.5 * sg * sg,
           0.5 * sa * sa,
           0.5,
           0.5 * overlap,
           0.5 * sg * sg,
           0.5 * overlap,
           0.5};
    return w;
}

BellReport<double> j_closed_form(const BlochAngles& a) {
    const double sa = std::sin(a.alpha), ca = std::cos(a.alpha);
    const double sg = std::sin(a.gamma), cg = std::cos(a.gamma);
    const double cross = std::cos(a.delta - a.beta) * sa * ca * sg * cg;
    const double one_minus_j0 = cross + sa * sa * sg * sg;
    const double j1 = cross + ca * ca * cg * cg;
    const double j2 = -cross + ca * ca * sg * sg;
    const double j3 = -cross + sa * sa * cg * cg;
    return classify_bell(1.0 - one_minus_j0, j1, j2, j3, 1e-9);
}

BellReport<double> j_closed_form(const SumDiffAngles& s) {
    const double cd = std::cos(s.delta);
    const double cr = std::cos(s.rho_ang), cs = std::cos(s.sigma_ang);
    const double sr = std::sin(s.rho_ang), ss = std::sin(s.sigma_ang);
    const double cos_diff = (cs * cs - cr * cr) / 4.0;
    const double cos_base = (cr * cr + cs * cs) / 4.0;
    const double sin_base = (sr * sr + ss * ss) / 4.0;
    const double one_minus_j0 = cd * cos_diff + cos_base - cr * cs / 2.0;
    const double j1 = cd * cos_diff + cos_base + cr * cs / 2.0;
    const double j2 = -cd * cos_diff + sin_base - sr * ss / 2.0;
    const double j3 = -cd * cos_diff + sin_base + sr * ss / 2.0;
    return classify_bell(1.0 - one_minus_j0, j1, j2, j3, 1e-9);
}

SearchResult minimize(BellTarget target, int grid_steps, double refine_tol) {
    if (grid_steps < 64) throw ValueOutOfRange("grid must have at least 64 steps per axis");
    if (!(refine_tol > 0)) throw ValueOutOfRange("refinement tolerance must be positive");

    const SeparableObjective obj{target};
    const double step0 = kTwoPi / grid_steps;

    std::vector<double> angle(static_cast<std::size_t>(grid_steps));
    std::vector<double> cosd(static_cast<std::size_t>(grid_steps));
    for (int i = 0; i < grid_steps; ++i) {
        angle[static_cast<std::size_t>(i)] = step0 * i;
        cosd[static_cast<std::size_t>(i)] = std::cos(step0 * i);
    }

    // Pass 1: exhaustive scan for the coarse minimum.
    double coarse_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_steps; ++i)
        for (int j = 0; j < grid_steps; ++j) {
            const double a = obj.a_term(angle[static_cast<std::size_t>(i)],
                                        angle[static_cast<std::size_t>(j)]);
            const double b = obj.b_term(angle[static_cast<std::size_t>(i)],
                                        angle[static_cast<std::size_t>(j)]);
            for (int k = 0; k < grid_steps; ++k)
                coarse_min = std::min(coarse_min, cosd[static_cast<std::size_t>(k)] * a + b);
        }

    // Pass 2: collect candidate cells near the coarse minimum.
    constexpr double kCollectBand = 1e-2;
    constexpr std::size_t kCandidateCap = 8192;
    struct Candidate {
        double value;
        SumDiffAngles at;
    };
    std::vector<Candidate> candidates;
    for (int i = 0; i < grid_steps; ++i)
        for (int j = 0; j < grid_steps; ++j) {
            const double a = obj.a_term(angle[static_cast<std::size_t>(i)],
                                        angle[static_cast<std::size_t>(j)]);
            const double b = obj.b_term(angle[static_cast<std::size_t>(i)],
                                        angle[static_cast<std::size_t>(j)]);
            for (int k = 0; k < grid_steps; ++k) {
                const double v = cosd[static_cast<std::size_t>(k)] * a + b;
                if (v <= coarse_min + kCollectBand)
                    candidates.push_back({v,
                                          SumDiffAngles{angle[static_cast<std::size_t>(i)],
                                                        angle[static_cast<std::size_t>(j)],
                                                        angle[static_cast<std::size_t>(k)]}});
            }
        }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& l, const Candidate& r) { return l.value < r.value; });
    if (candidates.size() > kCandidateCap) candidates.resize(kCandidateCap);

    // Coordinate descent with geometrically shrinking steps.
    auto refine = [&](SumDiffAngles s) {
        double* coords[3] = {&s.rho_ang, &s.sigma_ang, &s.delta};
        double value = obj(s);
        for (double step = step0; step >= refine_tol; step *= 0.1) {
            bool improved = true;
            while (improved) {
                improved = false;
                for (double* c : coords) {
                    for (const double dir : {+1.0, -1.0}) {
                        const double saved = *c;
                        *c = saved + dir * step;
                        const double v = obj(s);
                        if (v < value) {
                            value = v;
                            improved = true;
                        } else {
                            *c = saved;
                        }
                    }
                }
            }
        }
        return Candidate{value, s};
    };

    std::vector<Candidate> refined;
    refined.reserve(candidates.size());
    for (const Candidate& c : candidates) refined.push_back(refine(c.at));

    double best = std::numeric_limits<double>::infinity();
    for (const Candidate& c : refined) best = std::min(best, c.value);

    // Keep near-optimal points, canonicalize, deduplicate on the torus.
    constexpr double kArgminBand = 1e-6;
    constexpr double kDedupDistance = 1e-5;
    std::vector<SumDiffAngles> argmin;
    for (const Candidate& c : refined) {
        if (c.value > best + kArgminBand) continue;
        SumDiffAngles s{wrap_angle(c.at.rho_ang), wrap_angle(c.at.sigma_ang),
                        wrap_angle(c.at.delta)};
        bool dup = false;
        for (const SumDiffAngles& seen : argmin)
            if (circular_distance(s.rho_ang, seen.rho_ang) < kDedupDistance &&
                circular_distance(s.sigma_ang, seen.sigma_ang) < kDedupDistance &&
                circular_distance(s.delta, seen.delta) < kDedupDistance) {
                dup = true;
                break;
            }
        if (!dup) argmin.push_back(s);
    }
    std::sort(argmin.begin(), argmin.end(), [](const SumDiffAngles& l, const SumDiffAngles& r) {
        if (l.rho_ang != r.rho_ang) return l.rho_ang < r.rho_ang;
        if (l.sigma_ang != r.sigma_ang) return l.sigma_ang < r.sigma_ang;
        return l.delta < r.delta;
    });

    // Count the distinct correlation matrices the argmin angles induce.
    constexpr double kMatrixDistance = 1e-6;
    std::vector<Correlation<double>> matrices;
    for (const SumDiffAngles& s : argmin) {
        Correlation<double> c = correlation_me(qubit_pvms(to_bloch(s)), 1e-12);
        bool dup = false;
        for (const Correlation<double>& seen : matrices)
            if (max_entry_distance(c, seen) < kMatrixDistance) {
                dup = true;
                break;
            }
        if (!dup) matrices.push_back(std::move(c));
    }
    if (argmin.empty() || matrices.empty()) throw NumericalFailure("search produced no optimum");

    Correlation<double> canonical = correlation_me(qubit_pvms(to_bloch(argmin.front())), 1e-12);
    return SearchResult{target, best, std::move(argmin), std::move(canonical), matrices.size()};
}

const std::vector<ReferenceSaturator>& reference_saturators() {
    static const std::vector<ReferenceSaturator> table = [] {
        const double pi = std::numbers::pi;
        auto exact_matrix = [](const std::array<std::array<int, 9>, 4>& eighths) {
            std::vector<Rational> entries;
            entries.reserve(36);
            for (const auto& row : eighths)
                for (int v : row) entries.push_back(Rational(v, 8));
            return Correlation<Rational>(GameShape(3, 2), std::move(entries));
        };
        std::vector<ReferenceSaturator> t;
        t.push_back({BellTarget::J0,
                     BlochAngles{pi / 6, 0, pi / 6, pi},
                     exact_matrix({{{4, 1, 1, 1, 4, 1, 1, 1, 4},
                                    {0, 3, 3, 3, 0, 3, 3, 3, 0},
                                    {0, 3, 3, 3, 0, 3, 3, 3, 0},
                                    {4, 1, 1, 1, 4, 1, 1, 1, 4}}})});
        t.push_back({BellTarget::J1,
                     BlochAngles{pi / 3, 0, pi / 3, pi},
                     exact_matrix({{{4, 3, 3, 3, 4, 1, 3, 1, 4},
                                    {0, 1, 1, 1, 0, 3, 1, 3, 0},
                                    {0, 1, 1, 1, 0, 3, 1, 3, 0},
                                    {4, 3, 3, 3, 4, 1, 3, 1, 4}}})});
        t.push_back({BellTarget::J2,
                     BlochAngles{pi / 3, 0, pi / 6, 0},
                     exact_matrix({{{4, 3, 1, 3, 4, 3, 1, 3, 4},
                                    {0, 1, 3, 1, 0, 1, 3, 1, 0},
                                    {0, 1, 3, 1, 0, 1, 3, 1, 0},
                                    {4, 3, 1, 3, 4, 3, 1, 3, 4}}})});
        t.push_back({BellTarget::J3,
                     BlochAngles{pi / 6, 0, pi / 3, 0},
                     exact_matrix({{{4, 1, 3, 1, 4, 3, 3, 3, 4},
                                    {0, 3, 1, 3, 0, 1, 1, 1, 0},
                                    {0, 3, 1, 3, 0, 1, 1, 1, 0},
                                    {4, 1, 3, 1, 4, 3, 3, 3, 4}}})});
        return t;
    }();
    return table;
}

}  // namespace syncorr
