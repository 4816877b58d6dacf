#include "syncorr/functions.hpp"

#include <cmath>

namespace syncorr {

std::vector<std::vector<int>> enumerate_functions(const GameShape& shape) {
    std::uint64_t count = 1;
    for (int x = 0; x < shape.n; ++x) {
        count *= static_cast<std::uint64_t>(shape.m);
        if (count > kFunctionEnumerationCap)
            throw CapExceeded("m^n exceeds the enumeration cap of " +
                              std::to_string(kFunctionEnumerationCap));
    }
    std::vector<std::vector<int>> tables;
    tables.reserve(count);
    std::vector<int> f(static_cast<std::size_t>(shape.n), 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        tables.push_back(f);
        for (int x = shape.n - 1; x >= 0; --x) {
            if (++f[static_cast<std::size_t>(x)] < shape.m) break;
            f[static_cast<std::size_t>(x)] = 0;
        }
    }
    return tables;
}

std::uint64_t function_index(const std::vector<int>& f, const GameShape& shape) {
    if (static_cast<int>(f.size()) != shape.n) throw DimensionMismatch("function table length");
    std::uint64_t idx = 0;
    for (int x = 0; x < shape.n; ++x) {
        const int v = f[static_cast<std::size_t>(x)];
        if (v < 0 || v >= shape.m) throw ValueOutOfRange("function value out of range");
        idx = idx * static_cast<std::uint64_t>(shape.m) + static_cast<std::uint64_t>(v);
    }
    return idx;
}

}  // namespace syncorr
