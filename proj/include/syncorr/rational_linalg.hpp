#pragma once

#include "syncorr/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace syncorr {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;  // row-major, possibly ragged-checked by callers

/// Scales a rational vector in place so all entries are integers with overall
/// gcd 1. The zero vector is left untouched; signs are preserved.
void scale_to_coprime_integers(RatVec& v);

/// Rank of the row set (exact Gaussian elimination on a copy).
std::size_t rat_rank(RatMat rows);

/// True when appending `row` to `rows` increases the rank.
bool rat_independent_of(const RatMat& rows, const RatVec& row);

/// A basis of { x : R x = 0 } for the given rows over Q (each row of length
/// ncols). Returns an empty list when the kernel is trivial.
RatMat rat_nullspace(const RatMat& rows, std::size_t ncols);

/// One particular solution of A x = b, or nullopt when inconsistent.
std::optional<RatVec> rat_solve(RatMat a, RatVec b);

Rational rat_dot(const RatVec& a, const RatVec& b);

/// Incremental exact rank: rows are reduced against a growing echelon basis,
/// so streaming many rows costs O(rank * width) each.
class RankAccumulator {
public:
    explicit RankAccumulator(std::size_t ncols) : ncols_(ncols) {}

    /// Returns true when the row was independent of everything seen so far.
    bool add(RatVec row);

    std::size_t rank() const { return echelon_.size(); }

private:
    std::size_t ncols_;
    RatMat echelon_;                      // normalized rows, staggered pivots
    std::vector<std::size_t> pivot_cols_;
};

}  // namespace syncorr
