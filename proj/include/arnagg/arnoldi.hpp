#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arnagg/aggregation.hpp"
#include "arnagg/linalg.hpp"
#include "arnagg/markov.hpp"
#include "arnagg/sparse.hpp"

namespace arnagg {

struct ArnoldiOptions {
    /// A pass whose residual satisfies ||r_{j+1}||_2 <= tol * ||P||_inf is
    /// treated as having found an invariant Krylov subspace.
    double invarianceTolerance = 1e-14;
    /// Second Gram-Schmidt sweep per pass. Off by default.
    bool reorthogonalize = false;
    /// Basis rows to preallocate (0 = grow on demand).
    std::size_t reserveRows = 0;
};

enum class ExpandStatus { Expanded, InvariantSubspace };

/// Per-row quantities recorded when a Gram-Schmidt pass completes.
struct RowDiagnostics {
    double residualNorm2 = 0.0; ///< ||r_{i+1}||_2, before any invariance cut-off
    double residualNorm1 = 0.0; ///< ||r_{i+1}||_1
    /// sum_l |(H_i Q_i - Q_i P)(i, l)|, i.e. row i while it is the last row.
    double openRowSum = 0.0;
    /// Same row once h_{i,i+1} q_{i+1} is part of H Q (row i of a larger H).
    double closedRowSum = 0.0;
};

/// The Arnoldi aggregation of size j: Pi = H_j, A = Q_j, pi_0 = ||p_0||_2 e_1.
///
/// H_j is oriented so that H_j Q_j + h_{j,j+1} e_j q_{j+1}^T = Q_j P holds
/// with Q_j's rows as the basis, which makes it lower Hessenberg
/// (H(i, l) = 0 for l > i + 1).
struct ArnoldiAggregation {
    AggregationTriple triple;
    double sourceNorm = 0.0;
    /// h_{j,j+1}; exactly 0 when the subspace was found invariant.
    double boundaryCoefficient = 0.0;
    /// q_{j+1}; empty when invariant.
    Vector boundaryVector;
    bool invariant = false;
    /// |H_j Q_j - Q_j P| * 1_n, one entry per aggregate row.
    Vector residualRowSums;
    double residualNorm1 = 0.0;
    double residualNorm2 = 0.0;

    std::size_t dimension() const noexcept { return triple.dimension(); }
    std::size_t state_count() const noexcept { return triple.state_count(); }
    const DenseMatrix& hessenberg() const noexcept { return triple.step; }
    const DenseMatrix& basis() const noexcept { return triple.disaggregation; }
};

/// In-progress Arnoldi iteration over row vectors: q_1 = p_0 / ||p_0||_2,
/// r_1 = q_j^T P, modified Gram-Schmidt against q_1..q_j.
///
/// Construction performs the first pass, so a fresh state has dimension 1.
/// Basis rows and Hessenberg rows never change once written, which makes any
/// prefix of a long run identical to a shorter run (see snapshot()).
class ArnoldiState {
public:
    ArnoldiState(std::span<const double> p0, const SparseStochasticMatrix& P, ArnoldiOptions options = {});

    /// One outer pass. Returns InvariantSubspace (and changes nothing) when the
    /// previous pass already found h_{j,j+1} = 0; the caller must stop then.
    ExpandStatus expand(const SparseStochasticMatrix& P);

    std::size_t dimension() const noexcept { return dim_; }
    std::size_t state_count() const noexcept { return n_; }
    bool invariant() const noexcept { return invariant_; }
    double source_norm() const noexcept { return sourceNorm_; }
    double boundary_coefficient() const noexcept;
    std::span<const double> boundary_vector() const noexcept;
    std::span<const double> basis_row(std::size_t i) const noexcept { return {basis_.data() + i * n_, n_}; }
    /// Entry (i, l) of H_j for the current j (0-based).
    double hessenberg_entry(std::size_t i, std::size_t l) const noexcept;
    const std::vector<RowDiagnostics>& diagnostics() const noexcept { return rows_; }

    DenseMatrix hessenberg(std::size_t j) const;
    DenseMatrix basis(std::size_t j) const;
    DenseMatrix hessenberg() const { return hessenberg(dim_); }
    DenseMatrix basis() const { return basis(dim_); }

    /// Aggregation of size j <= dimension(), bit-identical to building one
    /// with j as the target.
    ArnoldiAggregation snapshot(std::size_t j) const;
    ArnoldiAggregation snapshot() const { return snapshot(dim_); }
    /// Moves the basis out instead of copying it.
    ArnoldiAggregation release() &&;

    /// |H_j Q_j - Q_j P| * 1_n from the recorded pass diagnostics, O(j).
    Vector residual_row_sums(std::size_t j) const;
    /// coeffs^T Q_j with j = coeffs.size() <= dimension().
    Vector combine_basis(std::span<const double> coeffs) const;

private:
    void run_pass(const CsrMatrix& P);

    std::size_t n_ = 0;
    ArnoldiOptions options_;
    double normP_ = 1.0;
    double sourceNorm_ = 0.0;
    std::size_t dim_ = 0;
    bool invariant_ = false;
    std::vector<double> basis_;                // row-major, dim_ (+1 unless invariant) rows
    std::vector<std::vector<double>> hrows_;  // row i holds H(i, 0..i+1)
    std::vector<RowDiagnostics> rows_;
    Vector image_, work_, proj_;
};

/// One Arnoldi pass on `state`; see ArnoldiState::expand.
inline ExpandStatus arnoldi_expand(ArnoldiState& state, const SparseStochasticMatrix& P) { return state.expand(P); }

/// Runs the iteration for up to j - 1 expansions. Stops early (and flags the
/// result invariant) if the Krylov subspace becomes invariant.
ArnoldiAggregation build_aggregation(std::span<const double> p0, const SparseStochasticMatrix& P, std::size_t j,
                                     ArnoldiOptions options = {});
ArnoldiAggregation build_aggregation(const Distribution& p0, const SparseStochasticMatrix& P, std::size_t j,
                                     ArnoldiOptions options = {});

/// ||p~_k - p_k||_1 against the naive oracle.
double transient_error(const ArnoldiAggregation& agg, std::span<const double> p0, const SparseStochasticMatrix& P,
                       std::size_t k);
/// Same for several horizons, sharing the propagation work.
std::vector<double> transient_errors(const ArnoldiAggregation& agg, std::span<const double> p0,
                                     const SparseStochasticMatrix& P, std::span<const std::size_t> horizons);

/// || sum_{i=j-1}^{k-1} pi_0^T H^i (h_{j,j+1} e_j q_{j+1}^T) P^{k-1-i} ||_1,
/// accumulated Horner-style with one n-vector (no matrix powers).
/// O(k j^2 + (k - j) nnz(P)).
double closed_form_error(const ArnoldiAggregation& agg, const SparseStochasticMatrix& P, std::size_t k);

/// sum_{i=0}^{k-1} < |pi_i|, |H_j Q_j - Q_j P| 1_n >, an upper bound on
/// ||err_k||_1 for any Arnoldi aggregation.
double error_bound(const ArnoldiAggregation& agg, std::size_t k);
std::vector<double> error_bounds(const ArnoldiAggregation& agg, std::span<const std::size_t> horizons);

struct NaiveCriteria {
    double residualNorm1;  ///< ||r_{j+1}||_1
    double boundaryAbs;    ///< |h_{j,j+1}|
    double dynamicResidual; ///< ||H_j Q_j - Q_j P||_inf
};

/// Intuitive convergence measures. Diagnostics only: none of them predicts
/// the transient error.
NaiveCriteria naive_criteria(const ArnoldiAggregation& agg);

/// |H Q - Q P| * 1_n computed directly, one row at a time.
Vector residual_row_sums(const DenseMatrix& H, const DenseMatrix& Q, const SparseStochasticMatrix& P);

} // namespace arnagg
