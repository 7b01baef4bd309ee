#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "arnagg/arnoldi.hpp"
#include "arnagg/eigensolver.hpp"

namespace arnagg {

enum class EigenMethod { Auto, Dense, KrylovSchur };

struct CriterionConfig {
    /// Threshold on the criterion; no default, must be set.
    double epsilon = std::numeric_limits<double>::quiet_NaN();
    std::size_t checkEvery = 10;
    /// Largest aggregate size before giving up (0 = number of states).
    std::size_t maxDimension = 0;
    /// Eigenvectors with max|Im| > eigTolerance * max|entry| count as complex.
    double eigTolerance = 1e-10;
    EigenMethod eigenMethod = EigenMethod::Auto;
    /// Auto uses the dense solver up to this size and Krylov-Schur above it.
    std::size_t denseLimit = 64;
    std::uint64_t seed = 0x5eed2024ULL;
    ArnoldiOptions arnoldi;

    /// Throws InvalidInput for a missing or negative epsilon, checkEvery = 0,
    /// eigTolerance outside (0, 1) or maxDimension above stateCount.
    void validate(std::size_t stateCount) const;
};

/// Real left eigenvector pi of H for the eigenvalue nearest 1.
struct DominantEigenvector {
    Vector vector;
    double eigenvalue = 0.0;
    bool isReal = true;
    /// ||pi^T Q_j||_1 of the unit vector, divided out by normalize_against_basis.
    double normalizer = 1.0;
};

/// The selected eigenvector was complex; the criterion is undefined.
struct ComplexRejection {
    Complex eigenvalue;
    double imaginaryRatio = 0.0; ///< max|Im| / max|entry| after phase normalisation
};

using EigenOutcome = std::variant<DominantEigenvector, ComplexRejection>;

/// Picks the eigenvalue nearest 1; ties go to the larger real part, then to
/// the lower index. Returns the index into `pairs`.
std::size_t select_nearest_one(std::span<const EigenPair> pairs);

/// Left eigenvector of H for the eigenvalue nearest 1, unit 2-norm.
/// Throws SolverFailure if both solvers fail.
EigenOutcome dominant_eigenvector(const DenseMatrix& H, const CriterionConfig& config);

/// Scales pi so that ||pi^T Q||_1 = 1 and sum(pi^T Q) >= 0. Throws
/// SolverFailure if pi^T Q vanishes.
void normalize_against_basis(DominantEigenvector& pi, const DenseMatrix& Q);
void normalize_against_basis(DominantEigenvector& pi, const ArnoldiState& state);

/// <|pi|, |H Q - Q P| 1_n> from precomputed residual row sums.
double criterion_value(const DominantEigenvector& pi, std::span<const double> residualRowSums);
/// Same, forming H Q - Q P explicitly.
double criterion_value(const DominantEigenvector& pi, const DenseMatrix& H, const DenseMatrix& Q,
                       const SparseStochasticMatrix& P);

enum class StopReason { CriterionMet, InvariantSubspace, MaxDimension };
std::string_view to_string(StopReason reason);

struct TraceRow {
    std::size_t dimension = 0;
    /// NaN when the eigenvector was rejected as complex.
    double criterion = 0.0;
    double boundaryCoefficient = 0.0;
    std::int64_t elapsedNs = 0;
};

struct AdaptiveResult {
    ArnoldiAggregation aggregation;
    std::optional<DominantEigenvector> eigenvector; ///< normalised; empty if the last check was complex
    StopReason reason = StopReason::MaxDimension;
    double criterion = std::numeric_limits<double>::quiet_NaN();
    std::vector<TraceRow> trace;

    bool converged() const noexcept { return reason != StopReason::MaxDimension; }
};

/// Expands the Arnoldi iteration and evaluates the criterion every
/// checkEvery passes, on invariance and at the size limit. Stops at the first
/// check with criterion <= epsilon. Hitting the limit is reported through
/// `reason`, not thrown.
AdaptiveResult run_adaptive(std::span<const double> p0, const SparseStochasticMatrix& P,
                            const CriterionConfig& config);

/// CSV with columns j,criterion,h_next,elapsed_ns,stop_reason; the stop
/// reason is filled on the last row only.
void write_trace_csv(std::ostream& out, const AdaptiveResult& result);

} // namespace arnagg
