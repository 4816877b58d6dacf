#include "syncorr/correlation.hpp"

namespace syncorr {

FloatConversion<Rational> to_float(const Correlation<Rational>& p) {
    std::vector<double> entries;
    entries.reserve(p.entries().size());
    bool lossless = true;
    for (const Rational& r : p.entries()) {
        const double v = to_double(r);
        if (Rational(v) != r) lossless = false;
        entries.push_back(v);
    }
    return FloatConversion<Rational>{Correlation<double>(p.shape(), std::move(entries)), lossless};
}

}  // namespace syncorr
