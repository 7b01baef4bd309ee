#include "arnagg/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace arnagg {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    detail::check_dimension("DenseMatrix data size", rows * cols, data_.size());
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    const std::size_t cols = rows.front().size();
    DenseMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        detail::check_dimension("DenseMatrix::from_rows row length", cols, rows[r].size());
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

DenseMatrix DenseMatrix::leading_block(std::size_t rows, std::size_t cols) const {
    if (rows > rows_ || cols > cols_) throw DimensionMismatch("leading_block larger than matrix");
    DenseMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto src = row(r);
        std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(cols), out.row(r).begin());
    }
    return out;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    detail::check_dimension("dot", a.size(), b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    detail::check_dimension("axpy", x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double l1_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    detail::check_dimension("l1_distance", a.size(), b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double inf_row_sum_norm(const DenseMatrix& m) {
    double best = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) best = std::max(best, l1_norm(m.row(r)));
    return best;
}

Vector vec_mat(std::span<const double> x, const DenseMatrix& m) {
    detail::check_dimension("vec_mat", m.rows(), x.size());
    Vector out(m.cols(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (x[r] != 0.0) axpy(x[r], m.row(r), out);
    }
    return out;
}

Vector mat_vec(const DenseMatrix& m, std::span<const double> x) {
    detail::check_dimension("mat_vec", m.cols(), x.size());
    Vector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out[r] = dot(m.row(r), x);
    return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    detail::check_dimension("matmul inner dimension", a.cols(), b.rows());
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto dst = out.row(r);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double f = a(r, k);
            if (f != 0.0) axpy(f, b.row(k), dst);
        }
    }
    return out;
}

} // namespace arnagg
