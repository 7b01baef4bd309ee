#include "arnagg/convergence.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "arnagg/error.hpp"
#include "arnagg/matrix_market.hpp"

namespace arnagg {

namespace {

// Krylov-Schur shift is 1 + kShiftOffset.
constexpr double kShiftOffset = 1e-8;
constexpr std::size_t kKrylovWanted = 1;

bool residual_ok(const DenseMatrix& H, const EigenPair& pair) {
    const std::size_t m = H.rows();
    double res = 0.0;
    double xnorm = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
        Complex acc = -pair.value * pair.vector[l];
        for (std::size_t i = 0; i < m; ++i) acc += pair.vector[i] * H(i, l);
        res += std::norm(acc);
        xnorm += std::norm(pair.vector[l]);
    }
    return std::sqrt(res) <= 1e-9 * std::max(inf_row_sum_norm(H), 1e-300) * std::sqrt(xnorm);
}

std::vector<EigenPair> krylov_candidates(const DenseMatrix& H, const CriterionConfig& config) {
    KrylovSchurOptions ks;
    ks.shift = Complex(1.0 + kShiftOffset, 0.0);
    ks.wanted = kKrylovWanted;
    ks.seed = config.seed;
    auto pairs = krylov_schur_nearest(H, ks);
    for (const auto& p : pairs)
        if (!residual_ok(H, p)) throw SolverFailure("Krylov-Schur: eigenpair residual too large");
    return pairs;
}

EigenOutcome classify(const EigenPair& pair, double eigTolerance) {
    std::vector<Complex> x = pair.vector;
    std::size_t big = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (std::abs(x[i]) > std::abs(x[big])) big = i;
    const double bigAbs = std::abs(x[big]);
    if (bigAbs == 0.0) throw SolverFailure("eigensolver returned a zero eigenvector");
    const Complex phase = std::conj(x[big]) / bigAbs;
    double maxIm = 0.0;
    for (auto& v : x) {
        v *= phase;
        maxIm = std::max(maxIm, std::abs(v.imag()));
    }
    const double ratio = maxIm / bigAbs;
    if (ratio > eigTolerance) return ComplexRejection{pair.value, ratio};

    DominantEigenvector out;
    out.vector.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.vector[i] = x[i].real();
    const double nrm = l2_norm(out.vector);
    for (double& v : out.vector) v /= nrm;
    out.eigenvalue = pair.value.real();
    out.isReal = true;
    return out;
}

void normalize_with(DominantEigenvector& pi, const Vector& combined) {
    const double l1 = l1_norm(combined);
    if (!(l1 > 0.0) || !std::isfinite(l1)) throw SolverFailure("eigenvector vanishes on the basis");
    const double scale = (sum(combined) < 0.0 ? -1.0 : 1.0) / l1;
    for (double& v : pi.vector) v *= scale;
    pi.normalizer = l1;
}

} // namespace

void CriterionConfig::validate(std::size_t stateCount) const {
    if (std::isnan(epsilon)) throw InvalidInput("criterion: epsilon is required");
    if (epsilon < 0.0) throw InvalidInput("criterion: epsilon must be nonnegative");
    if (checkEvery == 0) throw InvalidInput("criterion: checkEvery must be positive");
    if (!(eigTolerance > 0.0 && eigTolerance < 1.0)) throw InvalidInput("criterion: eigTolerance must lie in (0, 1)");
    if (maxDimension > stateCount) throw InvalidInput("criterion: maxDimension exceeds the number of states");
}

std::size_t select_nearest_one(std::span<const EigenPair> pairs) {
    if (pairs.empty()) throw SolverFailure("no eigenvalues to select from");
    std::size_t best = 0;
    double bestDist = std::abs(pairs[0].value - 1.0);
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        const double d = std::abs(pairs[i].value - 1.0);
        if (d < bestDist || (d == bestDist && pairs[i].value.real() > pairs[best].value.real())) {
            best = i;
            bestDist = d;
        }
    }
    return best;
}

EigenOutcome dominant_eigenvector(const DenseMatrix& H, const CriterionConfig& config) {
    detail::check_dimension("dominant_eigenvector (square)", H.rows(), H.cols());
    if (H.rows() == 0) throw InvalidInput("dominant_eigenvector: empty matrix");

    const bool useKrylov = config.eigenMethod == EigenMethod::KrylovSchur ||
                           (config.eigenMethod == EigenMethod::Auto && H.rows() > config.denseLimit);
    std::vector<EigenPair> pairs;
    if (useKrylov) {
        try {
            pairs = krylov_candidates(H, config);
        } catch (const SolverFailure&) {
            pairs.clear();
        }
    }
    if (pairs.empty()) pairs = dense_left_eigenpairs(H);
    return classify(pairs[select_nearest_one(pairs)], config.eigTolerance);
}

void normalize_against_basis(DominantEigenvector& pi, const DenseMatrix& Q) {
    detail::check_dimension("normalize_against_basis", Q.rows(), pi.vector.size());
    normalize_with(pi, vec_mat(pi.vector, Q));
}

void normalize_against_basis(DominantEigenvector& pi, const ArnoldiState& state) {
    normalize_with(pi, state.combine_basis(pi.vector));
}

double criterion_value(const DominantEigenvector& pi, std::span<const double> residualRowSums) {
    detail::check_dimension("criterion_value", residualRowSums.size(), pi.vector.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < residualRowSums.size(); ++i) acc += std::abs(pi.vector[i]) * residualRowSums[i];
    return acc;
}

double criterion_value(const DominantEigenvector& pi, const DenseMatrix& H, const DenseMatrix& Q,
                       const SparseStochasticMatrix& P) {
    detail::check_dimension("criterion_value (H rows)", pi.vector.size(), H.rows());
    return criterion_value(pi, residual_row_sums(H, Q, P));
}

std::string_view to_string(StopReason reason) {
    switch (reason) {
    case StopReason::CriterionMet: return "criterion-met";
    case StopReason::InvariantSubspace: return "invariant-subspace";
    case StopReason::MaxDimension: return "max-dimension";
    }
    return "unknown";
}

AdaptiveResult run_adaptive(std::span<const double> p0, const SparseStochasticMatrix& P,
                            const CriterionConfig& config) {
    const std::size_t n = P.size();
    config.validate(n);
    detail::check_dimension("run_adaptive initial vector", n, p0.size());
    const std::size_t maxDim = config.maxDimension == 0 ? n : config.maxDimension;

    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    ArnoldiState state(p0, P, config.arnoldi);

    AdaptiveResult result;
    for (;;) {
        const std::size_t j = state.dimension();
        const bool invariant = state.invariant();
        const bool atLimit = j >= maxDim;
        if (j % config.checkEvery == 0 || invariant || atLimit) {
            const EigenOutcome outcome = dominant_eigenvector(state.hessenberg(), config);
            double crit = std::numeric_limits<double>::quiet_NaN();
            if (const auto* real = std::get_if<DominantEigenvector>(&outcome)) {
                DominantEigenvector pi = *real;
                normalize_against_basis(pi, state);
                crit = criterion_value(pi, state.residual_row_sums(j));
                result.eigenvector = std::move(pi);
            } else {
                result.eigenvector.reset();
            }
            result.criterion = crit;
            const auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
            result.trace.push_back({j, crit, state.boundary_coefficient(), elapsed.count()});

            if (invariant) {
                result.reason = StopReason::InvariantSubspace;
                break;
            }
            if (result.eigenvector && crit <= config.epsilon) {
                result.reason = StopReason::CriterionMet;
                break;
            }
            if (atLimit) {
                result.reason = StopReason::MaxDimension;
                break;
            }
        }
        state.expand(P);
    }
    result.aggregation = std::move(state).release();
    return result;
}

void write_trace_csv(std::ostream& out, const AdaptiveResult& result) {
    out << "# arnagg trace v1\n";
    out << "j,criterion,h_next,elapsed_ns,stop_reason\n";
    for (std::size_t r = 0; r < result.trace.size(); ++r) {
        const TraceRow& row = result.trace[r];
        out << row.dimension << ',';
        io::write_double(out, row.criterion);
        out << ',';
        io::write_double(out, row.boundaryCoefficient);
        out << ',' << row.elapsedNs << ',';
        if (r + 1 == result.trace.size()) out << to_string(result.reason);
        out << '\n';
    }
}

} // namespace arnagg
