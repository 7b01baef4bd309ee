#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "arnagg/linalg.hpp"

namespace arnagg {

using Complex = std::complex<double>;

/// Left eigenpair of a real square matrix H: x^T H = value * x^T.
struct EigenPair {
    Complex value;
    std::vector<Complex> vector; ///< unit 2-norm
};

/// Every left eigenpair of H (right eigenpairs of H^T), dense QR algorithm.
/// Throws SolverFailure if the QR iteration does not converge.
std::vector<EigenPair> dense_left_eigenpairs(const DenseMatrix& H);

struct KrylovSchurOptions {
    Complex shift{1.0, 0.0};
    std::size_t wanted = 3;             ///< eigenvalues nearest the shift
    std::size_t subspaceDimension = 24; ///< maximal Krylov basis size per cycle
    std::size_t maxRestarts = 300;
    double tolerance = 1e-13;           ///< relative Ritz residual for locking
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Left eigenpairs of H with eigenvalues nearest `shift`, found by the
/// Krylov-Schur method on the shift-inverted operator (H^T - shift I)^{-1}.
/// An upper Hessenberg H^T (lower Hessenberg H) is factored in O(m^2).
/// Results are ordered by increasing distance to the shift.
/// Throws SolverFailure when the restart budget is exhausted.
std::vector<EigenPair> krylov_schur_nearest(const DenseMatrix& H, const KrylovSchurOptions& options = {});

/// LU factorisation with partial pivoting of an upper Hessenberg matrix,
/// O(m^2). Exposed for testing.
class HessenbergLU {
public:
    /// Factors `a`, which must satisfy a(r, c) = 0 for r > c + 1.
    explicit HessenbergLU(DenseMatrix a);

    bool singular() const noexcept { return singular_; }
    /// Solves a x = b in place.
    void solve(std::vector<double>& b) const;

private:
    DenseMatrix u_;
    std::vector<double> multipliers_;
    std::vector<unsigned char> swapped_;
    bool singular_ = false;
};

/// True when m(r, c) == 0 for all r > c + 1.
bool is_upper_hessenberg(const DenseMatrix& m);

} // namespace arnagg
