#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "arnagg/linalg.hpp"
#include "arnagg/sparse.hpp"

namespace arnagg {

/// Probability vector: entries >= 0 summing to 1 within kSumTolerance.
class Distribution {
public:
    static constexpr double kSumTolerance = 1e-12;

    explicit Distribution(Vector p);

    static Distribution point_mass(std::size_t n, std::size_t index);
    static Distribution uniform(std::size_t n);

    std::size_t size() const noexcept { return p_.size(); }
    std::span<const double> values() const noexcept { return p_; }
    const Vector& vector() const noexcept { return p_; }
    double operator[](std::size_t i) const noexcept { return p_[i]; }

private:
    Vector p_;
};

/// out = v^T P. Accumulates in stored-entry order (row-major), so results are
/// bit-reproducible. `out` must not alias `v`.
void spmv_left(std::span<const double> v, const CsrMatrix& P, std::span<double> out);
Vector spmv_left(std::span<const double> v, const SparseStochasticMatrix& P);

/// p_k with p_k^T = p_0^T P^k, by k successive products.
Vector transient_naive(std::span<const double> p0, const SparseStochasticMatrix& P, std::size_t k);
Distribution transient_naive(const Distribution& p0, const SparseStochasticMatrix& P, std::size_t k);

struct Uniformisation {
    SparseStochasticMatrix chain;
    double rate;
};

/// Default rate multiplier applied to max |Q(i,i)| when no rate is given.
inline constexpr double kDefaultRateFactor = 1.001;

/// P = I + Q / rate. Throws InvalidRate if rate < max_i |Q(i,i)|.
Uniformisation uniformise(const SparseGeneratorMatrix& Q, std::optional<double> rate = std::nullopt);

/// pi^T A.
Vector disaggregate(std::span<const double> pi, const DenseMatrix& A);

} // namespace arnagg
