#include "syncorr/bell_search.hpp"
#include "syncorr/classical.hpp"
#include "syncorr/correlation.hpp"
#include "syncorr/errors.hpp"
#include "syncorr/json_io.hpp"
#include "syncorr/polytope.hpp"
#include "syncorr/quantum.hpp"
#include "syncorr/reproduce.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace {

using namespace syncorr;

constexpr int kExitClassical = 0;
constexpr int kExitNonclassical = 10;
constexpr int kExitSignaling = 11;
constexpr int kExitInvalid = 2;

double resolve_tol(const std::optional<double>& flag_tol) {
    if (flag_tol) return *flag_tol;
    if (const char* env = std::getenv("SYNCORR_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw ParseError("SYNCORR_TOL is not a number: " + std::string(env));
        }
    }
    return 1e-9;
}

template <class S>
Json functional_to_json(const SeparatingFunctional<S>& f) {
    Json j;
    Json coeffs = Json::array();
    if constexpr (ScalarTraits<S>::is_exact) {
        for (const auto& c : f.coefficients) coeffs.push_back(format_rational(c));
        j["coefficients"] = std::move(coeffs);
        j["bound"] = format_rational(f.bound);
        j["margin"] = format_rational(f.margin);
    } else {
        for (const auto& c : f.coefficients) coeffs.push_back(c);
        j["coefficients"] = std::move(coeffs);
        j["bound"] = f.bound;
        j["margin"] = f.margin;
    }
    return j;
}

struct CheckOptions {
    std::string path;
    std::optional<double> tol;
    bool certificate = false;
    bool json = false;
};

template <class S>
int run_check_typed(const Correlation<S>& p, const S& tol, const std::string& path,
                    const std::string& bytes, const CheckOptions& opt) {
    const GameShape& sh = p.shape();
    const bool synchronous = is_synchronous(p, tol).ok;
    const bool nonsignaling = is_nonsignaling(p, tol).ok;
    const bool symmetric = is_symmetric(p, tol);

    std::optional<bool> classical;
    std::optional<ClassicalCertificate<S>> cert;
    std::string classical_note;
    if (!synchronous) {
        classical = false;
        classical_note = "not synchronous";
    } else {
        try {
            cert = classical_membership(p, tol);
            classical = cert->verdict == Verdict::Classical;
        } catch (const CapExceeded& e) {
            classical_note = std::string("undecided: ") + e.what();
        }
    }

    std::optional<BellReport<S>> bell;
    if (sh == GameShape(3, 2)) bell = bell_values(w_coordinates(p), tol);

    const bool is_classical = classical.value_or(false);
    const int exit_code =
        is_classical ? kExitClassical : (nonsignaling ? kExitNonclassical : kExitSignaling);

    if (opt.json) {
        Json j;
        j["input"] = path;
        j["digest"] = digest_hex(bytes);
        j["mode"] = ScalarTraits<S>::mode_name();
        j["n"] = sh.n;
        j["m"] = sh.m;
        Json v;
        v["stochastic"] = true;
        v["synchronous"] = synchronous;
        v["nonsignaling"] = nonsignaling;
        v["symmetric"] = symmetric;
        if (classical)
            v["classical"] = *classical;
        else
            v["classical"] = nullptr;
        j["verdicts"] = std::move(v);
        if (!classical_note.empty()) j["classical_note"] = classical_note;
        if (bell) j["bell"] = bell_report_to_json(*bell);
        if (opt.certificate && cert) {
            if (cert->distribution) j["distribution"] = distribution_to_json(*cert->distribution);
            if (cert->functional) j["functional"] = functional_to_json(*cert->functional);
        }
        j["exit"] = exit_code;
        std::cout << dump_json(j);
    } else {
        std::cout << "input:        " << path << " (digest " << digest_hex(bytes) << ")\n";
        std::cout << "mode:         " << ScalarTraits<S>::mode_name() << "  (n=" << sh.n
                  << ", m=" << sh.m << ")\n";
        auto yn = [](bool b) { return b ? "yes" : "no"; };
        std::cout << "stochastic:   yes\n";
        std::cout << "synchronous:  " << yn(synchronous) << "\n";
        std::cout << "nonsignaling: " << yn(nonsignaling) << "\n";
        std::cout << "symmetric:    " << yn(symmetric) << "\n";
        if (classical)
            std::cout << "classical:    " << yn(*classical) << "\n";
        else
            std::cout << "classical:    " << classical_note << "\n";
        if (bell) {
            auto val = [](const S& x) {
                if constexpr (ScalarTraits<S>::is_exact)
                    return format_rational(x);
                else
                    return std::to_string(x);
            };
            std::cout << "Bell:         J0 = " << val(bell->j0) << ", J1 = " << val(bell->j1)
                      << ", J2 = " << val(bell->j2) << ", J3 = " << val(bell->j3) << "\n";
            if (bell->violated != BellInequality::None)
                std::cout << "              violated: " << bell_name(bell->violated) << " by "
                          << val(bell->magnitude) << "\n";
        }
        if (opt.certificate && cert) {
            if (cert->distribution) {
                std::cout << "certificate:  mixture of " << cert->distribution->weights.size()
                          << " deterministic strategies\n"
                          << dump_json(distribution_to_json(*cert->distribution));
            }
            if (cert->functional) {
                std::cout << "certificate:  separating functional\n"
                          << dump_json(functional_to_json(*cert->functional));
            }
        }
        const char* verdict = is_classical ? "classical"
                              : nonsignaling ? "nonclassical but nonsignaling"
                                             : "signaling";
        std::cout << "verdict:      " << verdict << "\n";
    }
    return exit_code;
}

int run_check(const CheckOptions& opt) {
    const std::string bytes = read_file(opt.path);
    const Json j = Json::parse(bytes);
    const double tol = resolve_tol(opt.tol);
    const ParsedCorrelation pc = correlation_from_json(j, tol);
    return std::visit(
        [&](const auto& p) {
            using Scalar = std::decay_t<decltype(p.entries()[0])>;
            if constexpr (ScalarTraits<Scalar>::is_exact)
                return run_check_typed(p, Rational(0), opt.path, bytes, opt);
            else
                return run_check_typed(p, tol, opt.path, bytes, opt);
        },
        pc);
}

int run_vertices(const std::string& game, const std::string& which, bool as_json) {
    if (game != "3x2") {
        std::cerr << "error: unsupported game label '" << game << "' (supported: 3x2)\n";
        return kExitInvalid;
    }
    VPolytope vp;
    if (which == "ns")
        vp = dd_enumerate(sync_ns_polytope_3_2());
    else if (which == "classical")
        vp = dd_enumerate(classical_polytope_3_2());
    else {
        std::cerr << "error: --which must be 'ns' or 'classical'\n";
        return kExitInvalid;
    }
    if (as_json) {
        std::cout << dump_json(vpolytope_to_json(vp));
    } else {
        std::cout << vp.vertices.size() << " vertices in dimension " << vp.dim << " (affine dim "
                  << affine_dimension(vp) << ")\n";
        for (const auto& v : vp.vertices) {
            std::cout << "(";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << format_rational(v[i]);
            }
            std::cout << ")\n";
        }
    }
    return 0;
}

int run_quantum_eval(const std::string& path, const std::optional<double>& tol_flag,
                     bool as_json) {
    const std::string bytes = read_file(path);
    const double tol = resolve_tol(tol_flag);
    const PVMFamily fam = pvm_from_json(Json::parse(bytes), tol);
    const Correlation<double> p = correlation_me(fam, tol);

    Json out;
    out["input"] = path;
    out["digest"] = digest_hex(bytes);
    out["d"] = fam.d;
    out["n"] = fam.n;
    out["m"] = fam.m;
    out["correlation"] = correlation_to_json(p);

    std::optional<BellReport<double>> bell;
    Json certs = Json::array();
    if (fam.n == 3 && fam.m == 2) {
        bell = bell_values(w_coordinates(p), tol);
        Json w = Json::array();
        for (const auto& x : w_coordinates(p).w) w.push_back(x);
        out["w"] = std::move(w);
        out["bell"] = bell_report_to_json(*bell);
        const std::array<std::array<int, 3>, 4> patterns = {
            {{1, 1, 1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}}};
        for (const auto& signs : patterns) {
            const TsirelsonCertificate c = tsirelson_certificate(fam, signs, tol);
            Json cj;
            cj["signs"] = signs;
            cj["functional"] = c.functional;
            cj["value"] = c.value;
            cj["functional_value"] = c.functional_value;
            cj["residual"] = c.residual;
            certs.push_back(std::move(cj));
        }
        out["certificates"] = certs;
    }

    if (as_json) {
        std::cout << dump_json(out);
    } else {
        std::cout << "measurements: d=" << fam.d << ", " << fam.n << " questions, " << fam.m
                  << " outcomes (digest " << digest_hex(bytes) << ")\n";
        std::cout << "correlation:\n" << dump_json(correlation_to_json(p));
        if (bell) {
            std::cout << "Bell:         J0 = " << bell->j0 << ", J1 = " << bell->j1
                      << ", J2 = " << bell->j2 << ", J3 = " << bell->j3 << "\n";
            if (bell->violated != BellInequality::None)
                std::cout << "              violated: " << bell_name(bell->violated) << " by "
                          << bell->magnitude << "\n";
            for (const auto& cj : certs)
                std::cout << "certificate " << cj["functional"].get<std::string>() << ": value "
                          << cj["value"].get<double>() << ", residual "
                          << cj["residual"].get<double>() << "\n";
        }
    }
    return 0;
}

int run_optimize(const std::string& target_name, int grid, double refine,
                 const std::string& out_path) {
    BellTarget target;
    if (target_name == "J0")
        target = BellTarget::J0;
    else if (target_name == "J1")
        target = BellTarget::J1;
    else if (target_name == "J2")
        target = BellTarget::J2;
    else if (target_name == "J3")
        target = BellTarget::J3;
    else {
        std::cerr << "error: --target must be one of J0, J1, J2, J3\n";
        return kExitInvalid;
    }
    const SearchResult res = minimize(target, grid, refine);
    const Json j = search_result_to_json(res);
    if (!out_path.empty()) {
        write_file(out_path, dump_json(j));
        std::cout << "min " << (target == BellTarget::J0 ? "1-J0" : target_name) << " = "
                  << res.min_value << " over " << res.argmin.size() << " minimizers ("
                  << res.distinct_matrices << " distinct matrix"
                  << (res.distinct_matrices == 1 ? "" : "es") << "); written to " << out_path
                  << "\n";
    } else {
        std::cout << dump_json(j);
    }
    return 0;
}

int run_reproduce(std::uint64_t seed) {
    const auto results = run_all_checks(seed);
    std::cout << format_check_table(results);
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"synchronous-correlation toolkit: polytope geometry, classical membership, "
                 "quantum evaluation, and Bell-functional optimization"};
    app.require_subcommand(1);

    CheckOptions check_opt;
    auto* check = app.add_subcommand(
        "check", "Classify a correlation file and optionally emit a certificate");
    check->add_option("path", check_opt.path, "correlation JSON file")->required();
    std::optional<double> check_tol;
    check->add_option("--tol", check_tol, "float-mode tolerance (default 1e-9 or SYNCORR_TOL)");
    check->add_flag("--certificate", check_opt.certificate, "include the certificate payload");
    check->add_flag("--json", check_opt.json, "machine-readable report");

    std::string game = "3x2", which;
    bool vertices_json = false;
    auto* vertices =
        app.add_subcommand("vertices", "Enumerate extreme points of a supported game's bodies");
    vertices->add_option("--game", game, "game label (supported: 3x2)")->required();
    vertices->add_option("--which", which, "'ns' or 'classical'")->required();
    vertices->add_flag("--json", vertices_json, "machine-readable vertex list");

    std::string pvm_path;
    std::optional<double> qe_tol;
    bool qe_json = false;
    auto* qeval = app.add_subcommand(
        "quantum-eval", "Evaluate the shared-state correlation of a measurement family");
    qeval->add_option("--pvms", pvm_path, "measurement family JSON file")->required();
    qeval->add_option("--tol", qe_tol, "validation tolerance (default 1e-9 or SYNCORR_TOL)");
    qeval->add_flag("--json", qe_json, "machine-readable report");

    std::string target_name = "J0", out_path;
    int grid = 128;
    double refine = 1e-10;
    auto* optimize =
        app.add_subcommand("optimize", "Minimize a Bell functional over the qubit family");
    optimize->add_option("--target", target_name, "J0, J1, J2, or J3")->required();
    optimize->add_option("--grid", grid, "grid steps per angle (default 128)");
    optimize->add_option("--refine", refine, "refinement step threshold (default 1e-10)");
    optimize->add_option("--out", out_path, "write the result JSON here");

    bool all = false;
    std::uint64_t seed = syncorr::kDefaultReproduceSeed;
    auto* reproduce =
        app.add_subcommand("reproduce", "Run every built-in end-to-end check and report a table");
    reproduce->add_flag("--all", all, "run the complete suite (the only mode)");
    reproduce->add_option("--seed", seed, "seed for the randomized checks (fixed default)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            check_opt.tol = check_tol;
            return run_check(check_opt);
        }
        if (vertices->parsed()) return run_vertices(game, which, vertices_json);
        if (qeval->parsed()) return run_quantum_eval(pvm_path, qe_tol, qe_json);
        if (optimize->parsed()) return run_optimize(target_name, grid, refine, out_path);
        if (reproduce->parsed()) return run_reproduce(seed);
    } catch (const syncorr::SyncorrError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
