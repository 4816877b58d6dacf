#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace syncorr {

/// Exact arbitrary-precision rational. Always kept in lowest terms with a
/// positive denominator (the backend canonicalizes on every operation).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// The two scalar modes of the library. Containers are homogeneous in one
/// mode; conversion Rational -> double is explicit and lossy-flagged, the
/// reverse direction is not provided.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool is_exact = true;
    static const char* mode_name() { return "rational"; }
    static Rational default_tol() { return Rational(0); }
    static Rational from_int(long num, long den = 1) { return Rational(num, den); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool is_exact = false;
    static const char* mode_name() { return "float"; }
    static double default_tol() { return 1e-9; }
    static double from_int(long num, long den = 1) {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

inline Rational scalar_abs(const Rational& x) { return boost::multiprecision::abs(x); }
inline double scalar_abs(double x) { return std::fabs(x); }

/// |x| <= tol. With the rational default tol = 0 this is exact equality to 0.
template <class S>
bool within_tol(const S& x, const S& tol) {
    return scalar_abs(x) <= tol;
}

inline double to_double(const Rational& x) { return x.template convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Canonical text form: "a" when the denominator is 1, else "a/b" in lowest
/// terms. This is the only rational form the JSON layer emits, which makes
/// rational round trips byte-identical.
std::string format_rational(const Rational& x);

/// Accepts the canonical forms above (optionally signed). Throws ParseError.
Rational parse_rational(const std::string& text);

}  // namespace syncorr
