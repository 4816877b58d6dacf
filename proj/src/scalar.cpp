#include "syncorr/scalar.hpp"

#include "syncorr/errors.hpp"

#include <cctype>
#include <string>

namespace syncorr {

std::string format_rational(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    auto fail = [&]() -> ParseError { return ParseError("not a rational literal: '" + text + "'"); };

    std::size_t i = 0, n = text.size();
    auto skip_ws = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_integer = [&]() -> std::string {
        std::string out;
        if (i < n && (text[i] == '+' || text[i] == '-')) out += text[i++];
        std::size_t digits = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            out += text[i++];
            ++digits;
        }
        if (digits == 0) throw fail();
        return out;
    };

    skip_ws();
    const std::string num = read_integer();
    skip_ws();
    std::string den = "1";
    if (i < n && text[i] == '/') {
        ++i;
        skip_ws();
        den = read_integer();
        skip_ws();
    }
    if (i != n) throw fail();

    BigInt d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(BigInt(num), d);
}

}  // namespace syncorr
