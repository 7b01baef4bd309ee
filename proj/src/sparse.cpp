#include "arnagg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace arnagg {

namespace {
std::string row_label(std::size_t r) { return "row " + std::to_string(r + 1); }
} // namespace

CsrMatrix::CsrMatrix(std::size_t n, std::vector<std::size_t> rowOffsets, std::vector<std::uint32_t> columns,
                     std::vector<double> values)
    : n_(n), offsets_(std::move(rowOffsets)), columns_(std::move(columns)), values_(std::move(values)) {
    if (n_ > std::numeric_limits<std::uint32_t>::max()) throw InvalidInput("CsrMatrix: too many states");
    detail::check_dimension("CsrMatrix row offsets", n_ + 1, offsets_.size());
    detail::check_dimension("CsrMatrix values", columns_.size(), values_.size());
    if (offsets_.front() != 0 || offsets_.back() != columns_.size())
        throw InvalidInput("CsrMatrix: row offsets do not cover the stored entries");
    for (std::size_t r = 0; r < n_; ++r) {
        if (offsets_[r] > offsets_[r + 1]) throw InvalidInput("CsrMatrix: decreasing row offsets");
        for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
            if (columns_[k] >= n_) throw InvalidInput("CsrMatrix: column index out of range in " + row_label(r));
            if (k > offsets_[r] && columns_[k] <= columns_[k - 1])
                throw InvalidInput("CsrMatrix: column indices not strictly increasing in " + row_label(r));
            if (!std::isfinite(values_[k])) throw InvalidInput("CsrMatrix: non-finite value in " + row_label(r));
        }
    }
}

CsrMatrix CsrMatrix::from_triplets(std::size_t n, std::vector<Triplet> triplets) {
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> vals;
    cols.reserve(triplets.size());
    vals.reserve(triplets.size());
    std::size_t i = 0;
    for (std::size_t r = 0; r < n; ++r) {
        while (i < triplets.size() && triplets[i].row == r) {
            const std::size_t c = triplets[i].col;
            if (c >= n) throw InvalidInput("CsrMatrix::from_triplets: column index out of range");
            double v = 0.0;
            while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) v += triplets[i++].value;
            if (v != 0.0) {
                cols.push_back(static_cast<std::uint32_t>(c));
                vals.push_back(v);
            }
        }
        offsets[r + 1] = cols.size();
    }
    if (i != triplets.size()) throw InvalidInput("CsrMatrix::from_triplets: row index out of range");
    return CsrMatrix(n, std::move(offsets), std::move(cols), std::move(vals));
}

CsrMatrix CsrMatrix::from_dense(const DenseMatrix& m) {
    detail::check_dimension("CsrMatrix::from_dense (square)", m.rows(), m.cols());
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0.0) t.push_back({r, c, m(r, c)});
    return from_triplets(m.rows(), std::move(t));
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
    std::vector<std::size_t> offsets(n + 1);
    std::vector<std::uint32_t> cols(n);
    for (std::size_t i = 0; i < n; ++i) {
        offsets[i + 1] = i + 1;
        cols[i] = static_cast<std::uint32_t>(i);
    }
    return CsrMatrix(n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0));
}

double CsrMatrix::at(std::size_t r, std::size_t c) const {
    const auto cols = row_columns(r);
    const auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<std::uint32_t>(c));
    if (it == cols.end() || *it != c) return 0.0;
    return row_values(r)[static_cast<std::size_t>(it - cols.begin())];
}

double CsrMatrix::row_sum(std::size_t r) const { return sum(row_values(r)); }

double CsrMatrix::inf_norm() const {
    double best = 0.0;
    for (std::size_t r = 0; r < n_; ++r) best = std::max(best, l1_norm(row_values(r)));
    return best;
}

DenseMatrix CsrMatrix::to_dense() const {
    DenseMatrix d(n_, n_);
    for (std::size_t r = 0; r < n_; ++r) {
        const auto cols = row_columns(r);
        const auto vals = row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) d(r, cols[k]) = vals[k];
    }
    return d;
}

std::vector<Triplet> CsrMatrix::to_triplets() const {
    std::vector<Triplet> t;
    t.reserve(nonzeros());
    for (std::size_t r = 0; r < n_; ++r) {
        const auto cols = row_columns(r);
        const auto vals = row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) t.push_back({r, cols[k], vals[k]});
    }
    return t;
}

SparseStochasticMatrix::SparseStochasticMatrix(CsrMatrix m) : m_(std::move(m)) {
    if (m_.size() == 0) throw InvalidInput("stochastic matrix must have at least one state");
    for (std::size_t r = 0; r < m_.size(); ++r) {
        for (double v : m_.row_values(r))
            if (v < 0.0) throw InvalidInput("stochastic matrix: negative probability in " + row_label(r));
        const double s = m_.row_sum(r);
        if (std::abs(s - 1.0) > kRowSumTolerance)
            throw InvalidInput("stochastic matrix: " + row_label(r) + " sums to " + std::to_string(s));
    }
}

SparseGeneratorMatrix::SparseGeneratorMatrix(CsrMatrix m) : m_(std::move(m)) {
    if (m_.size() == 0) throw InvalidInput("generator matrix must have at least one state");
    for (std::size_t r = 0; r < m_.size(); ++r) {
        const auto cols = m_.row_columns(r);
        const auto vals = m_.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] == r) {
                if (vals[k] > 0.0) throw InvalidInput("generator: positive diagonal in " + row_label(r));
            } else if (vals[k] < 0.0) {
                throw InvalidInput("generator: negative rate in " + row_label(r));
            }
        }
        const double s = m_.row_sum(r);
        if (std::abs(s) > kRowSumTolerance)
            throw InvalidInput("generator: " + row_label(r) + " sums to " + std::to_string(s));
    }
}

double SparseGeneratorMatrix::max_exit_rate() const {
    double best = 0.0;
    for (std::size_t r = 0; r < m_.size(); ++r) best = std::max(best, std::abs(m_.at(r, r)));
    return best;
}

} // namespace arnagg
