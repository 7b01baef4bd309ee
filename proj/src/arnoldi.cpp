#include "arnagg/arnoldi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace arnagg {

namespace {

/// r -= h q and s += h q in one sweep over q.
void deflate(double h, const double* q, double* r, double* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double hq = h * q[i];
        r[i] -= hq;
        s[i] += hq;
    }
}

double dot_raw(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

} // namespace

ArnoldiState::ArnoldiState(std::span<const double> p0, const SparseStochasticMatrix& P, ArnoldiOptions options)
    : n_(P.size()), options_(options) {
    detail::check_dimension("ArnoldiState initial vector", n_, p0.size());
    if (!all_finite(p0)) throw InvalidInput("initial vector has non-finite entries");
    sourceNorm_ = l2_norm(p0);
    if (sourceNorm_ == 0.0) throw InvalidInput("initial vector is zero");
    normP_ = P.csr().inf_norm();

    if (options_.reserveRows > 0) basis_.reserve(std::min(options_.reserveRows, n_ + 1) * n_);
    basis_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) basis_[i] = p0[i] / sourceNorm_;
    image_.resize(n_);
    work_.resize(n_);
    proj_.resize(n_);
    run_pass(P.csr());
}

ExpandStatus ArnoldiState::expand(const SparseStochasticMatrix& P) {
    detail::check_dimension("ArnoldiState::expand matrix", n_, P.size());
    if (invariant_) return ExpandStatus::InvariantSubspace;
    run_pass(P.csr());
    return ExpandStatus::Expanded;
}

void ArnoldiState::run_pass(const CsrMatrix& P) {
    const std::size_t c = dim_; // row being completed; q_c is the newest basis row
    spmv_left(basis_row(c), P, image_);
    std::copy(image_.begin(), image_.end(), work_.begin());
    std::fill(proj_.begin(), proj_.end(), 0.0);

    std::vector<double> hrow(c + 2, 0.0);
    const int sweeps = options_.reorthogonalize ? 2 : 1;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t i = 0; i <= c; ++i) {
            const double* q = basis_.data() + i * n_;
            const double h = dot_raw(work_.data(), q, n_);
            deflate(h, q, work_.data(), proj_.data(), n_);
            hrow[i] += h;
        }
    }

    RowDiagnostics diag;
    diag.residualNorm2 = l2_norm(work_);
    diag.residualNorm1 = l1_norm(work_);
    diag.openRowSum = l1_distance(proj_, image_);

    // At j = n the Krylov space is the whole space, so it is invariant even
    // when rounding leaves a nonzero residual.
    const bool found = diag.residualNorm2 <= options_.invarianceTolerance * normP_ || c + 1 == n_;
    if (found) {
        invariant_ = true;
        diag.closedRowSum = diag.openRowSum;
    } else {
        const double h = diag.residualNorm2;
        hrow[c + 1] = h;
        const std::size_t base = basis_.size();
        basis_.resize(base + n_);
        double closed = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double q = work_[i] / h;
            basis_[base + i] = q;
            closed += std::abs(proj_[i] + h * q - image_[i]);
        }
        diag.closedRowSum = closed;
    }
    hrows_.push_back(std::move(hrow));
    rows_.push_back(diag);
    dim_ = c + 1;
}

double ArnoldiState::boundary_coefficient() const noexcept { return invariant_ ? 0.0 : hrows_[dim_ - 1][dim_]; }

std::span<const double> ArnoldiState::boundary_vector() const noexcept {
    if (invariant_) return {};
    return basis_row(dim_);
}

double ArnoldiState::hessenberg_entry(std::size_t i, std::size_t l) const noexcept {
    if (i >= dim_ || l >= dim_ || l > i + 1) return 0.0;
    return hrows_[i][l];
}

DenseMatrix ArnoldiState::hessenberg(std::size_t j) const {
    if (j == 0 || j > dim_) throw DimensionMismatch("hessenberg: requested dimension not available");
    DenseMatrix H(j, j);
    for (std::size_t i = 0; i < j; ++i) {
        const std::size_t last = std::min(i + 1, j - 1);
        for (std::size_t l = 0; l <= last; ++l) H(i, l) = hrows_[i][l];
    }
    return H;
}

DenseMatrix ArnoldiState::basis(std::size_t j) const {
    if (j == 0 || j > dim_) throw DimensionMismatch("basis: requested dimension not available");
    return DenseMatrix(j, n_, std::vector<double>(basis_.begin(), basis_.begin() + static_cast<std::ptrdiff_t>(j * n_)));
}

Vector ArnoldiState::residual_row_sums(std::size_t j) const {
    if (j == 0 || j > dim_) throw DimensionMismatch("residual_row_sums: requested dimension not available");
    Vector b(j);
    for (std::size_t i = 0; i + 1 < j; ++i) b[i] = rows_[i].closedRowSum;
    b[j - 1] = rows_[j - 1].openRowSum;
    return b;
}

Vector ArnoldiState::combine_basis(std::span<const double> coeffs) const {
    if (coeffs.empty() || coeffs.size() > dim_) throw DimensionMismatch("combine_basis: too many coefficients");
    Vector out(n_, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0.0) axpy(coeffs[i], basis_row(i), out);
    return out;
}

ArnoldiAggregation ArnoldiState::snapshot(std::size_t j) const {
    if (j == 0 || j > dim_) throw DimensionMismatch("snapshot: requested dimension not available");
    ArnoldiAggregation agg;
    agg.triple.step = hessenberg(j);
    agg.triple.disaggregation = basis(j);
    agg.triple.initial.assign(j, 0.0);
    agg.triple.initial[0] = sourceNorm_;
    agg.sourceNorm = sourceNorm_;
    const bool lastRowInvariant = j == dim_ && invariant_;
    agg.invariant = lastRowInvariant;
    if (!lastRowInvariant) {
        agg.boundaryCoefficient = hrows_[j - 1][j];
        const auto q = basis_row(j);
        agg.boundaryVector.assign(q.begin(), q.end());
    }
    agg.residualRowSums = residual_row_sums(j);
    agg.residualNorm1 = rows_[j - 1].residualNorm1;
    agg.residualNorm2 = rows_[j - 1].residualNorm2;
    return agg;
}

ArnoldiAggregation ArnoldiState::release() && {
    const std::size_t j = dim_;
    ArnoldiAggregation agg;
    agg.triple.step = hessenberg(j);
    agg.triple.initial.assign(j, 0.0);
    agg.triple.initial[0] = sourceNorm_;
    agg.sourceNorm = sourceNorm_;
    agg.invariant = invariant_;
    if (!invariant_) {
        agg.boundaryCoefficient = hrows_[j - 1][j];
        const auto q = basis_row(j);
        agg.boundaryVector.assign(q.begin(), q.end());
    }
    agg.residualRowSums = residual_row_sums(j);
    agg.residualNorm1 = rows_[j - 1].residualNorm1;
    agg.residualNorm2 = rows_[j - 1].residualNorm2;
    basis_.resize(j * n_);
    agg.triple.disaggregation = DenseMatrix(j, n_, std::move(basis_));
    basis_.clear();
    dim_ = 0;
    return agg;
}

ArnoldiAggregation build_aggregation(std::span<const double> p0, const SparseStochasticMatrix& P, std::size_t j,
                                     ArnoldiOptions options) {
    if (j == 0) throw InvalidInput("aggregation dimension must be at least 1");
    if (j > P.size()) throw InvalidInput("aggregation dimension exceeds the state count");
    options.reserveRows = std::max(options.reserveRows, j + 1);
    ArnoldiState state(p0, P, options);
    while (state.dimension() < j) {
        if (state.expand(P) == ExpandStatus::InvariantSubspace) break;
    }
    return std::move(state).release();
}

ArnoldiAggregation build_aggregation(const Distribution& p0, const SparseStochasticMatrix& P, std::size_t j,
                                     ArnoldiOptions options) {
    return build_aggregation(p0.values(), P, j, options);
}

double transient_error(const ArnoldiAggregation& agg, std::span<const double> p0, const SparseStochasticMatrix& P,
                       std::size_t k) {
    const std::size_t horizon[] = {k};
    return transient_errors(agg, p0, P, horizon).front();
}

std::vector<double> transient_errors(const ArnoldiAggregation& agg, std::span<const double> p0,
                                     const SparseStochasticMatrix& P, std::span<const std::size_t> horizons) {
    detail::check_dimension("transient_errors initial vector", P.size(), p0.size());
    detail::check_dimension("transient_errors aggregation state count", P.size(), agg.state_count());

    std::vector<std::size_t> order(horizons.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return horizons[a] < horizons[b]; });

    const StepPropagator prop(agg.triple.step);
    Vector pi = agg.triple.initial;
    Vector p(p0.begin(), p0.end());
    Vector next(p.size());
    std::vector<double> errors(horizons.size());
    std::size_t at = 0;
    for (std::size_t idx : order) {
        const std::size_t steps = horizons[idx] - at;
        for (std::size_t s = 0; s < steps; ++s) {
            spmv_left(p, P.csr(), next);
            p.swap(next);
        }
        prop.advance(pi, steps);
        at = horizons[idx];
        errors[idx] = l1_distance(disaggregate(pi, agg.triple.disaggregation), p);
    }
    return errors;
}

double closed_form_error(const ArnoldiAggregation& agg, const SparseStochasticMatrix& P, std::size_t k) {
    const std::size_t j = agg.dimension();
    if (agg.invariant || agg.boundaryCoefficient == 0.0 || k < j) return 0.0;
    detail::check_dimension("closed_form_error state count", P.size(), agg.state_count());
    detail::check_dimension("closed_form_error boundary vector", P.size(), agg.boundaryVector.size());

    const StepPropagator prop(agg.triple.step);
    const double h = agg.boundaryCoefficient;
    Vector pi = agg.triple.initial;
    Vector piNext(j);
    Vector acc(P.size(), 0.0);
    Vector accNext(P.size());
    // acc_i = acc_{i-1} P + (pi_0^T H^i)(j) h q_{j+1}, for i = j-1 .. k-1.
    for (std::size_t i = 0; i < k; ++i) {
        if (i >= j - 1) {
            if (i > j - 1) {
                spmv_left(acc, P.csr(), accNext);
                acc.swap(accNext);
            }
            axpy(pi[j - 1] * h, agg.boundaryVector, acc);
        }
        if (i + 1 < k) {
            prop.apply(pi, piNext);
            pi.swap(piNext);
        }
    }
    return l1_norm(acc);
}

std::vector<double> error_bounds(const ArnoldiAggregation& agg, std::span<const std::size_t> horizons) {
    detail::check_dimension("error_bound residual row sums", agg.dimension(), agg.residualRowSums.size());
    std::size_t maxK = 0;
    for (std::size_t k : horizons) maxK = std::max(maxK, k);

    // cumulative[k] = sum_{i<k} <|pi_i|, b>
    std::vector<double> cumulative(maxK + 1, 0.0);
    const StepPropagator prop(agg.triple.step);
    Vector pi = agg.triple.initial;
    Vector next(pi.size());
    double total = 0.0;
    for (std::size_t i = 0; i < maxK; ++i) {
        double term = 0.0;
        for (std::size_t r = 0; r < pi.size(); ++r) term += std::abs(pi[r]) * agg.residualRowSums[r];
        total += term;
        cumulative[i + 1] = total;
        if (i + 1 < maxK) {
            prop.apply(pi, next);
            pi.swap(next);
        }
    }
    std::vector<double> out(horizons.size());
    for (std::size_t idx = 0; idx < horizons.size(); ++idx) out[idx] = cumulative[horizons[idx]];
    return out;
}

double error_bound(const ArnoldiAggregation& agg, std::size_t k) {
    const std::size_t horizon[] = {k};
    return error_bounds(agg, horizon).front();
}

NaiveCriteria naive_criteria(const ArnoldiAggregation& agg) {
    return {agg.residualNorm1, agg.residualNorm2,
            agg.residualRowSums.empty() ? 0.0
                                        : *std::max_element(agg.residualRowSums.begin(), agg.residualRowSums.end())};
}

Vector residual_row_sums(const DenseMatrix& H, const DenseMatrix& Q, const SparseStochasticMatrix& P) {
    detail::check_dimension("residual_row_sums H (square)", H.rows(), H.cols());
    detail::check_dimension("residual_row_sums Q rows", H.rows(), Q.rows());
    detail::check_dimension("residual_row_sums Q columns", P.size(), Q.cols());
    const std::size_t n = P.size();
    Vector b(H.rows());
    Vector row(n);
    Vector image(n);
    for (std::size_t i = 0; i < H.rows(); ++i) {
        std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t l = 0; l < H.cols(); ++l)
            if (H(i, l) != 0.0) axpy(H(i, l), Q.row(l), row);
        spmv_left(Q.row(i), P.csr(), image);
        b[i] = l1_distance(row, image);
    }
    return b;
}

} // namespace arnagg
