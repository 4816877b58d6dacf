#include "syncorr/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace syncorr {

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(const std::string& bytes) {
    std::ostringstream os;
    os << std::hex << std::setfill('0') << std::setw(16) << fnv1a64(bytes);
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
}

namespace {

template <class S>
Json correlation_body(const Correlation<S>& p, const char* mode) {
    Json j;
    j["n"] = p.shape().n;
    j["m"] = p.shape().m;
    j["mode"] = mode;
    Json rows = Json::array();
    const int ncols = p.shape().columns();
    for (int r = 0; r < p.shape().rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < ncols; ++c) {
            if constexpr (ScalarTraits<S>::is_exact)
                row.push_back(format_rational(p.at_rc(r, c)));
            else
                row.push_back(p.at_rc(r, c));
        }
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

int require_positive_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ParseError(std::string("missing integer field '") + key + "'");
    const int v = j[key].get<int>();
    if (v < 1) throw ParseError(std::string("field '") + key + "' must be positive");
    return v;
}

}  // namespace

Json correlation_to_json(const Correlation<Rational>& p) { return correlation_body(p, "rational"); }
Json correlation_to_json(const Correlation<double>& p) { return correlation_body(p, "float"); }

ParsedCorrelation correlation_from_json(const Json& j, double float_tol) {
    const int n = require_positive_int(j, "n");
    const int m = require_positive_int(j, "m");
    if (!j.contains("mode") || !j["mode"].is_string())
        throw ParseError("missing string field 'mode'");
    const std::string mode = j["mode"].get<std::string>();
    if (!j.contains("entries") || !j["entries"].is_array())
        throw ParseError("missing array field 'entries'");
    const GameShape shape(n, m);
    const auto& rows = j["entries"];
    if (static_cast<int>(rows.size()) != shape.rows())
        throw ParseError("expected " + std::to_string(shape.rows()) + " entry rows");

    if (mode == "rational") {
        std::vector<Rational> entries;
        entries.reserve(static_cast<std::size_t>(shape.rows()) * shape.columns());
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != shape.columns())
                throw ParseError("expected " + std::to_string(shape.columns()) +
                                 " values per entry row");
            for (const auto& cell : row) {
                if (cell.is_string())
                    entries.push_back(parse_rational(cell.get<std::string>()));
                else if (cell.is_number_integer())
                    entries.push_back(Rational(cell.get<long long>()));
                else
                    throw ParseError("rational mode requires \"a/b\" strings");
            }
        }
        return validate_stochastic(std::move(entries), shape, Rational(0));
    }
    if (mode == "float") {
        std::vector<double> entries;
        entries.reserve(static_cast<std::size_t>(shape.rows()) * shape.columns());
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != shape.columns())
                throw ParseError("expected " + std::to_string(shape.columns()) +
                                 " values per entry row");
            for (const auto& cell : row) {
                if (!cell.is_number()) throw ParseError("float mode requires numeric entries");
                entries.push_back(cell.get<double>());
            }
        }
        return validate_stochastic(std::move(entries), shape, float_tol);
    }
    throw ParseError("mode must be \"rational\" or \"float\"");
}

namespace {

template <class S>
Json distribution_body(const FunctionDistribution<S>& mu) {
    Json j;
    j["n"] = mu.shape.n;
    j["m"] = mu.shape.m;
    Json weights = Json::array();
    const auto tables = enumerate_functions(mu.shape);
    for (const auto& [idx, w] : mu.weights) {
        Json entry;
        entry["f"] = tables.at(idx);
        if constexpr (ScalarTraits<S>::is_exact)
            entry["w"] = format_rational(w);
        else
            entry["w"] = w;
        weights.push_back(std::move(entry));
    }
    j["weights"] = std::move(weights);
    return j;
}

}  // namespace

Json distribution_to_json(const FunctionDistribution<Rational>& mu) {
    return distribution_body(mu);
}
Json distribution_to_json(const FunctionDistribution<double>& mu) { return distribution_body(mu); }

Json pvm_to_json(const PVMFamily& pvms) {
    Json j;
    j["d"] = pvms.d;
    j["n"] = pvms.n;
    j["m"] = pvms.m;
    Json questions = Json::array();
    for (const auto& question : pvms.projectors) {
        Json outcomes = Json::array();
        for (const ComplexMatrix& e : question) {
            Json mat = Json::array();
            for (Eigen::Index r = 0; r < e.rows(); ++r) {
                Json row = Json::array();
                for (Eigen::Index c = 0; c < e.cols(); ++c)
                    row.push_back(Json::array({e(r, c).real(), e(r, c).imag()}));
                mat.push_back(std::move(row));
            }
            outcomes.push_back(std::move(mat));
        }
        questions.push_back(std::move(outcomes));
    }
    j["projectors"] = std::move(questions);
    return j;
}

PVMFamily pvm_from_json(const Json& j, double tol) {
    const int d = require_positive_int(j, "d");
    const int n = require_positive_int(j, "n");
    const int m = require_positive_int(j, "m");
    if (!j.contains("projectors") || !j["projectors"].is_array())
        throw ParseError("missing array field 'projectors'");
    const auto& questions = j["projectors"];
    if (static_cast<int>(questions.size()) != n) throw ParseError("expected one entry per question");

    std::vector<std::vector<ComplexMatrix>> raw;
    for (const auto& outcomes : questions) {
        if (!outcomes.is_array() || static_cast<int>(outcomes.size()) != m)
            throw ParseError("expected one matrix per outcome");
        std::vector<ComplexMatrix> ops;
        for (const auto& mat : outcomes) {
            if (!mat.is_array() || static_cast<int>(mat.size()) != d)
                throw ParseError("expected a " + std::to_string(d) + "-row matrix");
            ComplexMatrix e(d, d);
            for (int r = 0; r < d; ++r) {
                const auto& row = mat[static_cast<std::size_t>(r)];
                if (!row.is_array() || static_cast<int>(row.size()) != d)
                    throw ParseError("expected " + std::to_string(d) + " values per matrix row");
                for (int c = 0; c < d; ++c) {
                    const auto& cell = row[static_cast<std::size_t>(c)];
                    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                        !cell[1].is_number())
                        throw ParseError("matrix entries must be [re, im] pairs");
                    e(r, c) = std::complex<double>(cell[0].get<double>(), cell[1].get<double>());
                }
            }
            ops.push_back(std::move(e));
        }
        raw.push_back(std::move(ops));
    }
    return validate_pvm(raw, tol);
}

Json vpolytope_to_json(const VPolytope& v) {
    Json j;
    j["dim"] = v.dim;
    j["count"] = v.vertices.size();
    Json verts = Json::array();
    for (const RatVec& vert : v.vertices) {
        Json point = Json::array();
        for (const Rational& x : vert) point.push_back(format_rational(x));
        verts.push_back(std::move(point));
    }
    j["vertices"] = std::move(verts);
    return j;
}

Json hpolytope_to_json(const HPolytope& h) {
    Json j;
    j["dim"] = h.dim;
    auto rows = [](const std::vector<std::pair<RatVec, Rational>>& list, const char* rhs_key) {
        Json out = Json::array();
        for (const auto& [coeffs, rhs] : list) {
            Json row;
            Json a = Json::array();
            for (const Rational& x : coeffs) a.push_back(format_rational(x));
            row["coeffs"] = std::move(a);
            row[rhs_key] = format_rational(rhs);
            out.push_back(std::move(row));
        }
        return out;
    };
    j["inequalities"] = rows(h.inequalities, "bound");
    j["equations"] = rows(h.equations, "value");
    return j;
}

Json search_result_to_json(const SearchResult& r) {
    Json j;
    j["target"] = bell_target_name(r.target);
    j["min_value"] = r.min_value;
    Json arg = Json::array();
    for (const SumDiffAngles& s : r.argmin) {
        Json a;
        a["rho"] = s.rho_ang;
        a["sigma"] = s.sigma_ang;
        a["delta"] = s.delta;
        arg.push_back(std::move(a));
    }
    j["argmin"] = std::move(arg);
    j["distinct_matrices"] = r.distinct_matrices;
    j["canonical_matrix"] = correlation_to_json(r.canonical_matrix);
    return j;
}

}  // namespace syncorr
