#pragma once

#include <stdexcept>
#include <string>

namespace syncorr {

struct SyncorrError : std::runtime_error {
    explicit SyncorrError(const std::string& what) : std::runtime_error(what) {}
};

// --- input / data-model errors ---

struct DimensionMismatch : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct NegativeEntry : SyncorrError {
    std::size_t row, col;
    NegativeEntry(const std::string& what, std::size_t r, std::size_t c)
        : SyncorrError(what), row(r), col(c) {}
};

struct ColumnSumViolation : SyncorrError {
    std::size_t column;
    double deviation;
    ColumnSumViolation(const std::string& what, std::size_t column_, double deviation_)
        : SyncorrError(what), column(column_), deviation(deviation_) {}
};

struct ValueOutOfRange : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct WeightSumViolation : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct ShapeMismatch : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct CapExceeded : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct ParseError : SyncorrError {
    using SyncorrError::SyncorrError;
};

// --- predicate preconditions ---

struct NotSynchronous : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct NotSymmetric : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct NotNonsignaling : SyncorrError {
    using SyncorrError::SyncorrError;
};

// --- polytope errors ---

struct Infeasible : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct Unbounded : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct EmptyPolytope : SyncorrError {
    using SyncorrError::SyncorrError;
};

/// A feasibility condition of an explicit construction failed; `which` is the
/// condition index (0 = nonnegativity, then the numbered inequalities).
struct ConditionViolated : SyncorrError {
    int which;
    int xa, xb;
    ConditionViolated(const std::string& what, int which_, int xa_, int xb_)
        : SyncorrError(what), which(which_), xa(xa_), xb(xb_) {}
};

struct MarginalMismatch : SyncorrError {
    using SyncorrError::SyncorrError;
};

// --- quantum errors ---

struct NotHermitian : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct NotIdempotent : SyncorrError {
    double maxdev;
    NotIdempotent(const std::string& what, double maxdev_) : SyncorrError(what), maxdev(maxdev_) {}
};

struct NotComplete : SyncorrError {
    double maxdev;
    NotComplete(const std::string& what, double maxdev_) : SyncorrError(what), maxdev(maxdev_) {}
};

struct NotPositiveSemidefinite : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct ImaginaryResidual : SyncorrError {
    double maxdev;
    ImaginaryResidual(const std::string& what, double maxdev_)
        : SyncorrError(what), maxdev(maxdev_) {}
};

struct NotNormalized : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct CommutationViolation : SyncorrError {
    double maxdev;
    CommutationViolation(const std::string& what, double maxdev_)
        : SyncorrError(what), maxdev(maxdev_) {}
};

struct DegenerateGap : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct OutcomeCountNotTwo : SyncorrError {
    using SyncorrError::SyncorrError;
};

struct CertificateMismatch : SyncorrError {
    double deviation;
    CertificateMismatch(const std::string& what, double deviation_)
        : SyncorrError(what), deviation(deviation_) {}
};

/// A floating-point solve finished but failed its residual verification.
struct NumericalFailure : SyncorrError {
    using SyncorrError::SyncorrError;
};

}  // namespace syncorr
