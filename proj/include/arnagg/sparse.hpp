#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "arnagg/linalg.hpp"

namespace arnagg {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Square compressed-sparse-row matrix. Column indices are strictly
/// increasing within each row; construction enforces it.
class CsrMatrix {
public:
    CsrMatrix() = default;
    CsrMatrix(std::size_t n, std::vector<std::size_t> rowOffsets, std::vector<std::uint32_t> columns,
              std::vector<double> values);

    /// Duplicates are summed, explicit zeros are dropped.
    static CsrMatrix from_triplets(std::size_t n, std::vector<Triplet> triplets);
    static CsrMatrix from_dense(const DenseMatrix& m);
    static CsrMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    std::size_t nonzeros() const noexcept { return values_.size(); }

    std::span<const std::size_t> row_offsets() const noexcept { return offsets_; }
    std::span<const std::uint32_t> columns() const noexcept { return columns_; }
    std::span<const double> values() const noexcept { return values_; }

    std::span<const std::uint32_t> row_columns(std::size_t r) const noexcept {
        return {columns_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
    }
    std::span<const double> row_values(std::size_t r) const noexcept {
        return {values_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
    }

    /// Stored value at (r, c), zero when absent.
    double at(std::size_t r, std::size_t c) const;
    double row_sum(std::size_t r) const;
    /// Maximum absolute row sum.
    double inf_norm() const;

    DenseMatrix to_dense() const;
    std::vector<Triplet> to_triplets() const;

    friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::uint32_t> columns_;
    std::vector<double> values_;
};

/// Row-stochastic transition matrix P of a DTMC.
class SparseStochasticMatrix {
public:
    static constexpr double kRowSumTolerance = 1e-12;

    SparseStochasticMatrix() = default;
    /// Throws InvalidInput unless entries are >= 0 and rows sum to 1 within
    /// kRowSumTolerance. Inputs are never renormalised.
    explicit SparseStochasticMatrix(CsrMatrix m);

    std::size_t size() const noexcept { return m_.size(); }
    const CsrMatrix& csr() const noexcept { return m_; }

private:
    CsrMatrix m_;
};

/// Infinitesimal generator Q of a CTMC.
class SparseGeneratorMatrix {
public:
    static constexpr double kRowSumTolerance = 1e-9;

    SparseGeneratorMatrix() = default;
    explicit SparseGeneratorMatrix(CsrMatrix m);

    std::size_t size() const noexcept { return m_.size(); }
    const CsrMatrix& csr() const noexcept { return m_; }
    /// max_i |Q(i,i)|
    double max_exit_rate() const;

private:
    CsrMatrix m_;
};

} // namespace arnagg
