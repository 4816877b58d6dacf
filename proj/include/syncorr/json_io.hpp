#pragma once

#include "syncorr/bell_search.hpp"
#include "syncorr/classical.hpp"
#include "syncorr/correlation.hpp"
#include "syncorr/functions.hpp"
#include "syncorr/polytope.hpp"
#include "syncorr/quantum.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <variant>

namespace syncorr {

using Json = nlohmann::ordered_json;

/// Canonical serialization: two-space indent, trailing newline. Fixed so that
/// repeated runs are byte-identical.
std::string dump_json(const Json& j);

/// FNV-1a 64-bit digest of a byte string, as a fixed-width hex literal.
std::uint64_t fnv1a64(const std::string& bytes);
std::string digest_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Correlation: {"n", "m", "mode": "rational"|"float", "entries": [[...]]}
// with m^2 rows of n^2 values; rationals are "a/b" strings, floats numbers.
Json correlation_to_json(const Correlation<Rational>& p);
Json correlation_to_json(const Correlation<double>& p);

using ParsedCorrelation = std::variant<Correlation<Rational>, Correlation<double>>;
ParsedCorrelation correlation_from_json(const Json& j, double float_tol = 1e-9);

// Function distribution: {"n", "m", "weights": [{"f": [...], "w": ...}]}.
Json distribution_to_json(const FunctionDistribution<Rational>& mu);
Json distribution_to_json(const FunctionDistribution<double>& mu);

// PVM family: {"d", "n", "m", "projectors": [question][outcome][row][[re,im]]}.
Json pvm_to_json(const PVMFamily& pvms);
PVMFamily pvm_from_json(const Json& j, double tol = 1e-9);

Json vpolytope_to_json(const VPolytope& v);
Json hpolytope_to_json(const HPolytope& h);

template <class S>
Json bell_report_to_json(const BellReport<S>& r) {
    Json j;
    if constexpr (ScalarTraits<S>::is_exact) {
        j["J0"] = format_rational(r.j0);
        j["J1"] = format_rational(r.j1);
        j["J2"] = format_rational(r.j2);
        j["J3"] = format_rational(r.j3);
        j["violated"] = bell_name(r.violated);
        j["magnitude"] = format_rational(r.magnitude);
    } else {
        j["J0"] = r.j0;
        j["J1"] = r.j1;
        j["J2"] = r.j2;
        j["J3"] = r.j3;
        j["violated"] = bell_name(r.violated);
        j["magnitude"] = r.magnitude;
    }
    return j;
}

Json search_result_to_json(const SearchResult& r);

}  // namespace syncorr
