#include "arnagg/markov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace arnagg {

Distribution::Distribution(Vector p) : p_(std::move(p)) {
    if (p_.empty()) throw InvalidInput("distribution must have at least one entry");
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (!std::isfinite(p_[i]) || p_[i] < 0.0)
            throw InvalidInput("distribution: entry " + std::to_string(i) + " is negative or not finite");
    }
    const double s = sum(p_);
    if (std::abs(s - 1.0) > kSumTolerance) throw InvalidInput("distribution sums to " + std::to_string(s));
}

Distribution Distribution::point_mass(std::size_t n, std::size_t index) {
    if (index >= n) throw InvalidInput("point mass index out of range");
    Vector p(n, 0.0);
    p[index] = 1.0;
    return Distribution(std::move(p));
}

Distribution Distribution::uniform(std::size_t n) {
    if (n == 0) throw InvalidInput("uniform distribution over zero states");
    return Distribution(Vector(n, 1.0 / static_cast<double>(n)));
}

void spmv_left(std::span<const double> v, const CsrMatrix& P, std::span<double> out) {
    detail::check_dimension("spmv_left vector length", P.size(), v.size());
    detail::check_dimension("spmv_left output length", P.size(), out.size());
    std::fill(out.begin(), out.end(), 0.0);
    const auto offsets = P.row_offsets();
    const auto cols = P.columns();
    const auto vals = P.values();
    for (std::size_t r = 0; r < P.size(); ++r) {
        const double x = v[r];
        if (x == 0.0) continue;
        for (std::size_t k = offsets[r]; k < offsets[r + 1]; ++k) out[cols[k]] += x * vals[k];
    }
}

Vector spmv_left(std::span<const double> v, const SparseStochasticMatrix& P) {
    Vector out(P.size());
    spmv_left(v, P.csr(), out);
    return out;
}

Vector transient_naive(std::span<const double> p0, const SparseStochasticMatrix& P, std::size_t k) {
    detail::check_dimension("transient_naive", P.size(), p0.size());
    Vector cur(p0.begin(), p0.end());
    Vector next(cur.size());
    for (std::size_t step = 0; step < k; ++step) {
        spmv_left(cur, P.csr(), next);
        cur.swap(next);
    }
    return cur;
}

Distribution transient_naive(const Distribution& p0, const SparseStochasticMatrix& P, std::size_t k) {
    Vector p = transient_naive(p0.values(), P, k);
    // Rounding can leave -0.0 or a sum a few ulps off 1; clamp the former only.
    for (double& x : p) x = std::max(x, 0.0);
    return Distribution(std::move(p));
}

Uniformisation uniformise(const SparseGeneratorMatrix& Q, std::optional<double> rate) {
    const double maxExit = Q.max_exit_rate();
    double lambda = rate.value_or(kDefaultRateFactor * maxExit);
    if (!rate && lambda == 0.0) lambda = 1.0;
    if (!std::isfinite(lambda) || lambda <= 0.0 || lambda < maxExit)
        throw InvalidRate("uniformisation rate " + std::to_string(lambda) + " is below the maximal exit rate " +
                          std::to_string(maxExit));

    const CsrMatrix& q = Q.csr();
    const std::size_t n = q.size();
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    cols.reserve(q.nonzeros() + n);
    vals.reserve(q.nonzeros() + n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto qc = q.row_columns(r);
        const auto qv = q.row_values(r);
        bool diagonalSeen = false;
        // The diagonal is 1 - (sum of off-diagonal probabilities) so that rows
        // sum to one to rounding even for large rates.
        double offSum = 0.0;
        for (std::size_t k = 0; k < qc.size(); ++k)
            if (qc[k] != r) offSum += qv[k] / lambda;
        const double diag = 1.0 - offSum;
        auto emitDiagonal = [&] {
            if (diag != 0.0) {
                cols.push_back(static_cast<std::uint32_t>(r));
                vals.push_back(std::max(diag, 0.0));
            }
            diagonalSeen = true;
        };
        for (std::size_t k = 0; k < qc.size(); ++k) {
            if (!diagonalSeen && qc[k] >= r) emitDiagonal();
            if (qc[k] == r) continue;
            if (qv[k] == 0.0) continue;
            cols.push_back(qc[k]);
            vals.push_back(qv[k] / lambda);
        }
        if (!diagonalSeen) emitDiagonal();
        offsets[r + 1] = cols.size();
    }
    return {SparseStochasticMatrix(CsrMatrix(n, std::move(offsets), std::move(cols), std::move(vals))), lambda};
}

Vector disaggregate(std::span<const double> pi, const DenseMatrix& A) {
    detail::check_dimension("disaggregate", A.rows(), pi.size());
    return vec_mat(pi, A);
}

} // namespace arnagg
