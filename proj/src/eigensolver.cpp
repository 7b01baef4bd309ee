#include "arnagg/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

#include <Eigen/Dense>

#include "arnagg/error.hpp"

namespace arnagg {

namespace {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

Eigen::MatrixXd transposed_eigen(const DenseMatrix& H) {
    Eigen::MatrixXd t(H.cols(), H.rows());
    for (std::size_t r = 0; r < H.rows(); ++r)
        for (std::size_t c = 0; c < H.cols(); ++c) t(Eigen::Index(c), Eigen::Index(r)) = H(r, c);
    return t;
}

std::vector<Complex> to_std(const CVector& v) {
    std::vector<Complex> out(std::size_t(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) out[std::size_t(i)] = v(i);
    return out;
}

// Shift-inverted operator y = (H^T - sigma I)^{-1} x for complex x and sigma.
class ShiftInvert {
public:
    ShiftInvert(const DenseMatrix& H, Complex sigma) : m_(H.rows()) {
        const Eigen::MatrixXd ht = transposed_eigen(H);
        if (sigma.imag() == 0.0 && is_upper_hessenberg_eigen(ht)) {
            DenseMatrix a(m_, m_);
            for (std::size_t r = 0; r < m_; ++r)
                for (std::size_t c = 0; c < m_; ++c) a(r, c) = ht(Eigen::Index(r), Eigen::Index(c));
            for (std::size_t i = 0; i < m_; ++i) a(i, i) -= sigma.real();
            hess_.emplace(std::move(a));
            if (hess_->singular()) throw SolverFailure("shift-invert: shifted matrix is singular");
        } else {
            CMatrix a = ht.cast<Complex>();
            a.diagonal().array() -= sigma;
            lu_.emplace(a);
            if (lu_->rcond() < 1e-300) throw SolverFailure("shift-invert: shifted matrix is singular");
        }
    }

    void apply(const CVector& x, CVector& y) const {
        if (hess_) {
            re_.resize(m_);
            im_.resize(m_);
            for (std::size_t i = 0; i < m_; ++i) {
                re_[i] = x(Eigen::Index(i)).real();
                im_[i] = x(Eigen::Index(i)).imag();
            }
            hess_->solve(re_);
            hess_->solve(im_);
            y.resize(Eigen::Index(m_));
            for (std::size_t i = 0; i < m_; ++i) y(Eigen::Index(i)) = Complex(re_[i], im_[i]);
        } else {
            y = lu_->solve(x);
        }
    }

private:
    static bool is_upper_hessenberg_eigen(const Eigen::MatrixXd& a) {
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            for (Eigen::Index r = c + 2; r < a.rows(); ++r)
                if (a(r, c) != 0.0) return false;
        return true;
    }

    std::size_t m_;
    std::optional<HessenbergLU> hess_;
    std::optional<Eigen::PartialPivLU<CMatrix>> lu_;
    mutable std::vector<double> re_, im_;
};

// Swaps the adjacent diagonal entries i, i+1 of the upper triangular T with a
// Givens rotation, updating the Schur vectors U.
void swap_schur(CMatrix& T, CMatrix& U, Eigen::Index i) {
    const Complex a = T(i, i);
    const Complex b = T(i + 1, i + 1);
    const Complex t = T(i, i + 1);
    const Complex x1 = t;
    const Complex x2 = b - a;
    const double nrm = std::hypot(std::abs(x1), std::abs(x2));
    if (nrm == 0.0) return;
    const Complex c = x1 / nrm;
    const Complex s = x2 / nrm;
    const Eigen::Index k = T.cols();
    for (Eigen::Index col = i; col < k; ++col) {
        const Complex ti = T(i, col);
        const Complex tj = T(i + 1, col);
        T(i, col) = std::conj(c) * ti + std::conj(s) * tj;
        T(i + 1, col) = -s * ti + c * tj;
    }
    for (Eigen::Index row = 0; row <= i + 1; ++row) {
        const Complex ti = T(row, i);
        const Complex tj = T(row, i + 1);
        T(row, i) = c * ti + s * tj;
        T(row, i + 1) = -std::conj(s) * ti + std::conj(c) * tj;
    }
    for (Eigen::Index row = 0; row < U.rows(); ++row) {
        const Complex ui = U(row, i);
        const Complex uj = U(row, i + 1);
        U(row, i) = c * ui + s * uj;
        U(row, i + 1) = -std::conj(s) * ui + std::conj(c) * uj;
    }
    T(i + 1, i) = 0.0;
}

// Orders the Schur form by decreasing |T(i, i)| (bubble sort on adjacent swaps).
void sort_schur(CMatrix& T, CMatrix& U) {
    const Eigen::Index k = T.rows();
    for (Eigen::Index pass = 0; pass < k; ++pass) {
        bool moved = false;
        for (Eigen::Index i = 0; i + 1 < k - pass; ++i) {
            if (std::abs(T(i + 1, i + 1)) > std::abs(T(i, i))) {
                swap_schur(T, U, i);
                moved = true;
            }
        }
        if (!moved) break;
    }
}

// Eigenvector of the upper triangular T for the eigenvalue T(i, i).
CVector triangular_eigenvector(const CMatrix& T, Eigen::Index i) {
    CVector y = CVector::Zero(T.rows());
    y(i) = 1.0;
    const Complex lambda = T(i, i);
    const double scale = std::max(T.cwiseAbs().maxCoeff(), 1e-300);
    for (Eigen::Index l = i - 1; l >= 0; --l) {
        Complex acc = 0.0;
        for (Eigen::Index r = l + 1; r <= i; ++r) acc += T(l, r) * y(r);
        Complex d = T(l, l) - lambda;
        if (std::abs(d) < 1e-15 * scale) d = 1e-15 * scale;
        y(l) = -acc / d;
    }
    return y;
}

} // namespace

bool is_upper_hessenberg(const DenseMatrix& m) {
    for (std::size_t r = 2; r < m.rows(); ++r)
        for (std::size_t c = 0; c + 1 < r && c < m.cols(); ++c)
            if (m(r, c) != 0.0) return false;
    return true;
}

HessenbergLU::HessenbergLU(DenseMatrix a) : u_(std::move(a)) {
    const std::size_t m = u_.rows();
    detail::check_dimension("HessenbergLU (square)", m, u_.cols());
    multipliers_.assign(m, 0.0);
    swapped_.assign(m, 0);
    for (std::size_t c = 0; c + 1 < m; ++c) {
        if (std::abs(u_(c + 1, c)) > std::abs(u_(c, c))) {
            for (std::size_t l = c; l < m; ++l) std::swap(u_(c, l), u_(c + 1, l));
            swapped_[c] = 1;
        }
        const double pivot = u_(c, c);
        if (pivot == 0.0) {
            singular_ = true;
            continue;
        }
        const double f = u_(c + 1, c) / pivot;
        multipliers_[c] = f;
        if (f != 0.0)
            for (std::size_t l = c; l < m; ++l) u_(c + 1, l) -= f * u_(c, l);
        u_(c + 1, c) = 0.0;
    }
    if (m > 0 && u_(m - 1, m - 1) == 0.0) singular_ = true;
}

void HessenbergLU::solve(std::vector<double>& b) const {
    const std::size_t m = u_.rows();
    detail::check_dimension("HessenbergLU::solve", m, b.size());
    if (singular_) throw SolverFailure("HessenbergLU: matrix is singular");
    for (std::size_t c = 0; c + 1 < m; ++c) {
        if (swapped_[c]) std::swap(b[c], b[c + 1]);
        b[c + 1] -= multipliers_[c] * b[c];
    }
    for (std::size_t r = m; r-- > 0;) {
        double acc = b[r];
        const auto row = u_.row(r);
        for (std::size_t l = r + 1; l < m; ++l) acc -= row[l] * b[l];
        b[r] = acc / row[r];
    }
}

std::vector<EigenPair> dense_left_eigenpairs(const DenseMatrix& H) {
    detail::check_dimension("dense_left_eigenpairs (square)", H.rows(), H.cols());
    if (H.rows() == 0) return {};
    Eigen::EigenSolver<Eigen::MatrixXd> es(transposed_eigen(H), true);
    if (es.info() != Eigen::Success) throw SolverFailure("dense eigensolver did not converge");
    const auto values = es.eigenvalues();
    const auto vectors = es.eigenvectors();
    std::vector<EigenPair> out;
    out.reserve(std::size_t(values.size()));
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        CVector v = vectors.col(i);
        const double nrm = v.norm();
        if (nrm > 0.0) v /= nrm;
        out.push_back({values(i), to_std(v)});
    }
    return out;
}

std::vector<EigenPair> krylov_schur_nearest(const DenseMatrix& H, const KrylovSchurOptions& options) {
    detail::check_dimension("krylov_schur_nearest (square)", H.rows(), H.cols());
    const std::size_t n = H.rows();
    if (n == 0) return {};
    if (options.wanted == 0) throw InvalidInput("krylov_schur_nearest: wanted must be positive");
    const Complex sigma = options.shift;

    // Small problems: every eigenpair is cheap, sort by distance to the shift.
    if (n <= options.subspaceDimension + 1 || n <= options.wanted + 2) {
        auto all = dense_left_eigenpairs(H);
        std::stable_sort(all.begin(), all.end(), [&](const EigenPair& a, const EigenPair& b) {
            return std::abs(a.value - sigma) < std::abs(b.value - sigma);
        });
        all.resize(std::min(all.size(), options.wanted));
        return all;
    }

    const ShiftInvert op(H, sigma);
    const Eigen::Index N = Eigen::Index(n);
    const Eigen::Index m = Eigen::Index(std::max(options.subspaceDimension, options.wanted + 2));
    const Eigen::Index nev = Eigen::Index(options.wanted);

    CMatrix V = CMatrix::Zero(N, m + 1);
    CMatrix S = CMatrix::Zero(m + 1, m);

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss;
    for (Eigen::Index i = 0; i < N; ++i) V(i, 0) = gauss(rng);
    V.col(0).normalize();

    CVector w(N);
    Eigen::Index k = 0;
    for (std::size_t restart = 0; restart <= options.maxRestarts; ++restart) {
        Eigen::Index active = m;
        for (Eigen::Index p = k; p < m; ++p) {
            op.apply(V.col(p), w);
            const double wnorm = w.norm();
            CVector h = V.leftCols(p + 1).adjoint() * w;
            w.noalias() -= V.leftCols(p + 1) * h;
            const CVector h2 = V.leftCols(p + 1).adjoint() * w;
            w.noalias() -= V.leftCols(p + 1) * h2;
            h += h2;
            S.col(p).head(p + 1) = h;
            const double beta = w.norm();
            S(p + 1, p) = beta;
            if (beta <= 1e-14 * wnorm) {
                // The Krylov space is invariant under the operator.
                S(p + 1, p) = 0.0;
                active = p + 1;
                break;
            }
            V.col(p + 1) = w / beta;
        }

        Eigen::ComplexSchur<CMatrix> schur(S.topLeftCorner(active, active));
        if (schur.info() != Eigen::Success) throw SolverFailure("Krylov-Schur: Schur decomposition failed");
        CMatrix T = schur.matrixT();
        CMatrix U = schur.matrixU();
        sort_schur(T, U);
        const Eigen::RowVectorXcd b = S.row(active).head(active) * U;

        const Eigen::Index want = std::min(nev, active);
        Eigen::Index locked = 0;
        while (locked < want && std::abs(b(locked)) <= options.tolerance * std::abs(T(locked, locked))) ++locked;
        const bool lucky = active < m;

        if (locked == want || lucky) {
            std::vector<EigenPair> out;
            for (Eigen::Index i = 0; i < want; ++i) {
                const CVector y = triangular_eigenvector(T, i);
                CVector x = V.leftCols(active) * (U * y);
                x.normalize();
                const Complex theta = T(i, i);
                out.push_back({sigma + 1.0 / theta, to_std(x)});
            }
            std::stable_sort(out.begin(), out.end(), [&](const EigenPair& a, const EigenPair& c) {
                return std::abs(a.value - sigma) < std::abs(c.value - sigma);
            });
            return out;
        }

        const Eigen::Index keep = std::min<Eigen::Index>(std::max(nev + 1, (m + nev) / 2), m - 1);
        CMatrix kept = V.leftCols(m) * U.leftCols(keep);
        V.leftCols(keep) = kept;
        V.col(keep) = V.col(m);
        S.setZero();
        S.topLeftCorner(keep, keep) = T.topLeftCorner(keep, keep);
        S.row(keep).head(keep) = b.head(keep);
        k = keep;
    }
    throw SolverFailure("Krylov-Schur: restart budget exhausted");
}

} // namespace arnagg
