#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "arnagg/convergence.hpp"
#include "arnagg/eigensolver.hpp"
#include "arnagg/error.hpp"
#include "test_support.hpp"

using namespace arnagg;

namespace {

CriterionConfig config(double eps) {
    CriterionConfig c;
    c.epsilon = eps;
    return c;
}

double left_residual(const DenseMatrix& H, const EigenPair& p) {
    const Eigen::MatrixXcd Hc = oracle::dense(H).cast<Complex>();
    Eigen::RowVectorXcd x(Eigen::Index(p.vector.size()));
    for (std::size_t i = 0; i < p.vector.size(); ++i) x(Eigen::Index(i)) = p.vector[i];
    return (x * Hc - p.value * x).norm();
}

DenseMatrix random_hessenberg(std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix H(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < m && l <= i + 1; ++l) H(i, l) = u(rng);
    return H;
}

} // namespace

TEST(Eigensolver, DenseLeftPairsSatisfyDefinition) {
    const DenseMatrix H = random_hessenberg(12, 1);
    const auto pairs = dense_left_eigenpairs(H);
    ASSERT_EQ(pairs.size(), 12u);
    for (const auto& p : pairs) EXPECT_LE(left_residual(H, p), 1e-10);
}

TEST(Eigensolver, KrylovSchurAgreesWithDense) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto inst = oracle::random_instance(400, seed);
        const ArnoldiAggregation a = build_aggregation(inst.p0, inst.P, 120);
        const DenseMatrix& H = a.hessenberg();
        EXPECT_TRUE(is_upper_hessenberg(H.transposed()));
        KrylovSchurOptions o;
        o.shift = Complex(1.0 + 1e-8, 0.0);
        const auto ks = krylov_schur_nearest(H, o);
        const auto dense = dense_left_eigenpairs(H);
        ASSERT_GE(ks.size(), o.wanted);
        std::vector<double> distances;
        for (const auto& p : dense) distances.push_back(std::abs(p.value - o.shift));
        std::sort(distances.begin(), distances.end());
        const double scale = inf_row_sum_norm(H);
        for (std::size_t i = 0; i < o.wanted; ++i) {
            EXPECT_NEAR(std::abs(ks[i].value - o.shift), distances[i], 1e-9);
            EXPECT_LE(left_residual(H, ks[i]), 1e-9 * scale);
        }
    }
}

TEST(Eigensolver, HessenbergLUSolves) {
    const DenseMatrix A = random_hessenberg(30, 8).transposed();
    ASSERT_TRUE(is_upper_hessenberg(A));
    const HessenbergLU lu(A);
    EXPECT_FALSE(lu.singular());
    std::vector<double> b(30);
    for (std::size_t i = 0; i < 30; ++i) b[i] = double(i) - 7.5;
    std::vector<double> x = b;
    lu.solve(x);
    const Vector back = mat_vec(A, x);
    for (std::size_t i = 0; i < 30; ++i) EXPECT_NEAR(back[i], b[i], 1e-10);
    EXPECT_TRUE(HessenbergLU(DenseMatrix(3, 3)).singular());
}

TEST(Criterion, SelectNearestOneTieBreaks) {
    std::vector<EigenPair> pairs{{Complex(0.5, 0), {}}, {Complex(1.5, 0), {}}, {Complex(0.9, 0), {}}};
    EXPECT_EQ(select_nearest_one(pairs), 2u);
    pairs = {{Complex(0.5, 0), {}}, {Complex(1.5, 0), {}}};
    EXPECT_EQ(select_nearest_one(pairs), 1u);
    pairs = {{Complex(1.0, 0.25), {}}, {Complex(1.0, -0.25), {}}};
    EXPECT_EQ(select_nearest_one(pairs), 0u);
}

TEST(Criterion, IdentityOneByOne) {
    const auto out = dominant_eigenvector(DenseMatrix::from_rows({{1.0}}), config(1e-12));
    const auto* pi = std::get_if<DominantEigenvector>(&out);
    ASSERT_NE(pi, nullptr);
    EXPECT_DOUBLE_EQ(pi->eigenvalue, 1.0);
    EXPECT_DOUBLE_EQ(std::abs(pi->vector[0]), 1.0);
}

TEST(Criterion, RotationIsRejectedAsComplex) {
    const double c = std::cos(0.3), s = std::sin(0.3);
    const auto out = dominant_eigenvector(DenseMatrix::from_rows({{c, -s}, {s, c}}), config(1e-12));
    const auto* rej = std::get_if<ComplexRejection>(&out);
    ASSERT_NE(rej, nullptr);
    EXPECT_NEAR(std::abs(rej->eigenvalue), 1.0, 1e-14);
    EXPECT_GT(rej->imaginaryRatio, 1e-10);
}

TEST(Criterion, StochasticMatrixGivesStationaryVector) {
    const auto P = models::random_chain(9, 4);
    const DenseMatrix H = P.csr().to_dense();
    const auto out = dominant_eigenvector(H, config(1e-12));
    auto pi = std::get<DominantEigenvector>(out);
    EXPECT_NEAR(pi.eigenvalue, 1.0, 1e-12);
    normalize_against_basis(pi, DenseMatrix::identity(9));
    EXPECT_NEAR(sum(pi.vector), 1.0, 1e-12);
    const Vector next = vec_mat(pi.vector, H);
    for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(next[i], pi.vector[i], 1e-12);
}

TEST(Criterion, CachedEqualsDirect) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto inst = oracle::random_instance(60, seed);
        ArnoldiState s(inst.p0.values(), inst.P);
        for (int i = 0; i < 15; ++i) s.expand(inst.P);
        const auto out = dominant_eigenvector(s.hessenberg(), config(1e-12));
        auto* pi = std::get_if<DominantEigenvector>(&out);
        if (!pi) continue;
        DominantEigenvector a = *pi, b = *pi;
        normalize_against_basis(a, s);
        normalize_against_basis(b, s.basis());
        EXPECT_NEAR(a.normalizer, b.normalizer, 1e-13);
        const double cached = criterion_value(a, s.residual_row_sums(s.dimension()));
        const double direct = criterion_value(b, s.hessenberg(), s.basis(), inst.P);
        EXPECT_NEAR(cached, direct, 1e-12 * std::max(1.0, direct));
        const Eigen::VectorXd rows = oracle::residual_row_sums(s.snapshot(), oracle::dense(inst.P));
        EXPECT_NEAR(oracle::row(b.vector).cwiseAbs().dot(rows.transpose()), direct, 1e-12 * std::max(1.0, direct));
    }
}

TEST(Criterion, NormalisedAgainstBasis) {
    const auto inst = oracle::random_instance(40, 3);
    const ArnoldiAggregation a = build_aggregation(inst.p0, inst.P, 8);
    const auto out = dominant_eigenvector(a.hessenberg(), config(1e-12));
    if (auto* pi = std::get_if<DominantEigenvector>(&out)) {
        DominantEigenvector v = *pi;
        normalize_against_basis(v, a.basis());
        const Vector x = vec_mat(v.vector, a.basis());
        EXPECT_NEAR(l1_norm(x), 1.0, 1e-12);
        EXPECT_GE(sum(x), 0.0);
    }
}

TEST(Criterion, ConfigValidation) {
    CriterionConfig c;
    EXPECT_THROW(c.validate(10), InvalidInput);
    c.epsilon = -1.0;
    EXPECT_THROW(c.validate(10), InvalidInput);
    c.epsilon = 1e-12;
    EXPECT_NO_THROW(c.validate(10));
    c.checkEvery = 0;
    EXPECT_THROW(c.validate(10), InvalidInput);
    c.checkEvery = 10;
    c.maxDimension = 11;
    EXPECT_THROW(c.validate(10), InvalidInput);
    c.maxDimension = 0;
    c.eigTolerance = 1.0;
    EXPECT_THROW(c.validate(10), InvalidInput);
}

TEST(Adaptive, IdentityStopsAtOneByInvariance) {
    const auto I = SparseStochasticMatrix(CsrMatrix::identity(7));
    const AdaptiveResult r = run_adaptive(Distribution::point_mass(7, 0).values(), I, config(1e-12));
    EXPECT_EQ(r.reason, StopReason::InvariantSubspace);
    EXPECT_EQ(r.aggregation.dimension(), 1u);
    EXPECT_LE(r.criterion, 1e-12);
    ASSERT_TRUE(r.eigenvector.has_value());
    ASSERT_EQ(r.trace.size(), 1u);
    EXPECT_EQ(r.trace[0].dimension, 1u);
}

TEST(Adaptive, LumpableStopsAtBlockCount) {
    for (const auto& blocks : std::vector<std::vector<std::size_t>>{{6}, {3, 5, 4}, {2, 9, 4, 7, 1, 5}}) {
        const auto lc = models::lumpable_test_chain(blocks, 11);
        const AdaptiveResult r = run_adaptive(lc.initial.values(), lc.chain, config(1e-12));
        EXPECT_TRUE(r.converged());
        EXPECT_LE(r.aggregation.dimension(), lc.exactSize);
        EXPECT_LE(r.criterion, 1e-12);
        for (std::size_t k : {100, 10000})
            EXPECT_LE(transient_error(r.aggregation, lc.initial.values(), lc.chain, k), double(k) * 1e-12);
    }
}

TEST(Adaptive, MaxDimensionIsReportedNotThrown) {
    const auto inst = oracle::random_instance(200, 5);
    CriterionConfig c = config(0.0);
    c.maxDimension = 25;
    const AdaptiveResult r = run_adaptive(inst.p0.values(), inst.P, c);
    EXPECT_EQ(r.reason, StopReason::MaxDimension);
    EXPECT_FALSE(r.converged());
    EXPECT_EQ(r.aggregation.dimension(), 25u);
    std::vector<std::size_t> checked;
    for (const auto& t : r.trace) checked.push_back(t.dimension);
    EXPECT_EQ(checked, (std::vector<std::size_t>{10, 20, 25}));
}

TEST(Adaptive, EigenMethodsAgree) {
    const auto inst = oracle::random_instance(300, 21);
    CriterionConfig dense = config(1e-12), ks = config(1e-12);
    dense.eigenMethod = EigenMethod::Dense;
    ks.eigenMethod = EigenMethod::KrylovSchur;
    dense.maxDimension = ks.maxDimension = 120;
    const AdaptiveResult a = run_adaptive(inst.p0.values(), inst.P, dense);
    const AdaptiveResult b = run_adaptive(inst.p0.values(), inst.P, ks);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        if (std::isnan(a.trace[i].criterion)) {
            EXPECT_TRUE(std::isnan(b.trace[i].criterion));
            continue;
        }
        EXPECT_NEAR(a.trace[i].criterion, b.trace[i].criterion, 1e-8 * std::max(1e-6, a.trace[i].criterion));
    }
}

TEST(Adaptive, TraceCsv) {
    const auto lc = models::lumpable_test_chain({3, 5, 4}, 1);
    const AdaptiveResult r = run_adaptive(lc.initial.values(), lc.chain, config(1e-12));
    std::ostringstream out;
    write_trace_csv(out, r);
    const std::string csv = out.str();
    EXPECT_NE(csv.find("j,criterion,h_next,elapsed_ns,stop_reason"), std::string::npos);
    EXPECT_NE(csv.find(std::string(to_string(r.reason))), std::string::npos);
    EXPECT_EQ(to_string(StopReason::CriterionMet), "criterion-met");
    EXPECT_EQ(to_string(StopReason::MaxDimension), "max-dimension");
}
