#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arnagg/error.hpp"

namespace arnagg {

using Vector = std::vector<double>;

/// Dense row-major matrix. Used for the small reduced systems (H, Q, Π, A);
/// the original chain is always sparse.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    /// Leading rows x cols block.
    DenseMatrix leading_block(std::size_t rows, std::size_t cols) const;
    DenseMatrix transposed() const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

double l1_norm(std::span<const double> v);
double l2_norm(std::span<const double> v);
double max_abs(std::span<const double> v);
double sum(std::span<const double> v);
/// Sum of |a_i - b_i|.
double l1_distance(std::span<const double> a, std::span<const double> b);
bool all_finite(std::span<const double> v);

/// Maximum absolute row sum.
double inf_row_sum_norm(const DenseMatrix& m);

/// Row vector times matrix: returns x^T M.
Vector vec_mat(std::span<const double> x, const DenseMatrix& m);
/// Matrix times column vector: returns M x.
Vector mat_vec(const DenseMatrix& m, std::span<const double> x);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

} // namespace arnagg
