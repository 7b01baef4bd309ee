#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arnagg/linalg.hpp"

namespace arnagg {

/// Reduced system (Pi, A, pi_0) of dimension m <= n. Pi need not be
/// stochastic and pi_k^T A need not be a distribution.
struct AggregationTriple {
    DenseMatrix step;           ///< Pi, m x m
    DenseMatrix disaggregation; ///< A, m x n
    Vector initial;             ///< pi_0, length m

    std::size_t dimension() const noexcept { return step.rows(); }
    std::size_t state_count() const noexcept { return disaggregation.cols(); }

    /// Throws on inconsistent shapes, m > n or non-finite entries.
    void validate() const;
};

/// Repeated row-vector products x <- x^T Pi that skip the structural zeros at
/// the end of each row of Pi (a Hessenberg Pi costs about m^2 / 2 per step).
class StepPropagator {
public:
    explicit StepPropagator(const DenseMatrix& step);

    std::size_t dimension() const noexcept { return step_->rows(); }
    /// out = x^T Pi. `out` must not alias `x`.
    void apply(std::span<const double> x, std::span<double> out) const;
    /// x <- x^T Pi^k
    void advance(Vector& x, std::size_t k) const;

private:
    const DenseMatrix* step_;
    std::vector<std::size_t> rowExtent_;
    mutable Vector scratch_;
};

/// pi_k^T = pi_0^T Pi^k by k vector-matrix products.
Vector aggregated_transient(const AggregationTriple& agg, std::size_t k);
/// p~_k^T = pi_k^T A.
Vector approx_transient(const AggregationTriple& agg, std::size_t k);
/// p~_k for each horizon (any order), computed in one sweep.
std::vector<Vector> approx_transients(const AggregationTriple& agg, std::span<const std::size_t> horizons);

} // namespace arnagg
