#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "arnagg/error.hpp"
#include "arnagg/models.hpp"
#include "test_support.hpp"

using namespace arnagg;
using namespace arnagg::models;

namespace {

void expect_generator_and_chain(const BuiltModel& m) {
    ASSERT_TRUE(m.generator.has_value());
    const CsrMatrix& Q = m.generator->csr();
    for (std::size_t r = 0; r < Q.size(); ++r) EXPECT_NEAR(Q.row_sum(r), 0.0, 1e-9);
    const CsrMatrix& P = m.chain.csr();
    for (std::size_t r = 0; r < P.size(); ++r) EXPECT_NEAR(P.row_sum(r), 1.0, 1e-12);
    EXPECT_GE(m.descriptor.uniformisationRate, m.descriptor.maxExitRate);
}

} // namespace

TEST(Reactions, PropensityIsFallingFactorial) {
    const Reaction r{{2, 1}, {0, 0}, 0.5};
    EXPECT_DOUBLE_EQ(propensity(r, {4, 3}), 0.5 * 4 * 3 * 3);
    EXPECT_DOUBLE_EQ(propensity(r, {1, 3}), 0.0);
    EXPECT_DOUBLE_EQ(propensity(Reaction{{0, 0}, {1, 0}, 2.0}, {7, 7}), 2.0);
}

TEST(Reactions, BirthDeathEnumeration) {
    ReactionNetwork net;
    net.species = {"X"};
    net.populationCap = {9};
    net.add_reaction({}, {"X"}, 2.0);
    net.add_reaction({"X"}, {}, 1.0);
    const StateSpace s = enumerate_state_space(net, {0});
    EXPECT_EQ(s.size(), 10u);
    EXPECT_EQ(s.find({9}).has_value(), true);
    EXPECT_EQ(s.find({10}).has_value(), false);
    const SparseGeneratorMatrix Q = build_generator(net, s);
    const std::size_t i3 = *s.find({3}), i4 = *s.find({4}), i2 = *s.find({2});
    EXPECT_DOUBLE_EQ(Q.csr().at(i3, i4), 2.0);
    EXPECT_DOUBLE_EQ(Q.csr().at(i3, i2), 3.0);
    EXPECT_DOUBLE_EQ(Q.csr().at(i3, i3), -5.0);
    EXPECT_DOUBLE_EQ(Q.csr().at(*s.find({9}), *s.find({9})), -9.0);
    EXPECT_THROW(enumerate_state_space(net, {0}, 5), StateSpaceOverflow);
}

TEST(Reactions, ValidationRejectsUnknownSpecies) {
    ReactionNetwork net;
    net.species = {"X"};
    net.populationCap = {3};
    EXPECT_THROW(net.add_reaction({"Y"}, {}, 1.0), InvalidInput);
}

TEST(Catalog, LotkaVolterra) {
    const BuiltModel m = builtin("lotka-volterra");
    EXPECT_EQ(m.descriptor.stateCount, 10201u);
    ASSERT_TRUE(m.descriptor.publishedRate.has_value());
    EXPECT_DOUBLE_EQ(*m.descriptor.publishedRate, 2078.0);
    EXPECT_NEAR(m.descriptor.uniformisationRate, 2078.0, 0.1);
    expect_generator_and_chain(m);
    const BuiltModel small = builtin("lotka-volterra", {.cap = 30});
    EXPECT_EQ(small.descriptor.stateCount, 31u * 31u);
    EXPECT_FALSE(small.descriptor.publishedRate.has_value());
}

TEST(Catalog, WorkstationCluster) {
    const BuiltModel m = builtin("workstation-cluster");
    EXPECT_EQ(m.descriptor.stateCount, 15540u);
    EXPECT_DOUBLE_EQ(m.descriptor.uniformisationRate, 50.08);
    expect_generator_and_chain(m);
    EXPECT_EQ(m.initial_distribution()[m.descriptor.initialState], 1.0);
}

TEST(Catalog, GeneExpression) {
    const BuiltModel m = builtin("gene-expression");
    EXPECT_EQ(m.descriptor.stateCount, 43957u);
    EXPECT_DOUBLE_EQ(m.descriptor.uniformisationRate, 16.78);
    expect_generator_and_chain(m);
}

TEST(Catalog, NamesAndErrors) {
    const auto names = builtin_names();
    EXPECT_NE(std::find(names.begin(), names.end(), "lotka-volterra"), names.end());
    EXPECT_THROW(builtin("no-such-model"), InvalidInput);
    EXPECT_THROW(builtin("rsvp-ingest"), InvalidInput);
}

TEST(Catalog, ExportAndIngestRoundTrip) {
    const BuiltModel m = builtin("lotka-volterra", {.cap = 12});
    const auto dir = std::filesystem::temp_directory_path() / "arnagg_model_export";
    std::filesystem::remove_all(dir);
    export_model(m, dir);
    const auto name = m.descriptor.name;
    EXPECT_TRUE(std::filesystem::exists(dir / (name + ".json")));
    const BuiltModel gen = ingest(dir / (name + ".generator.mtx"), MatrixKind::Auto, m.descriptor.uniformisationRate);
    EXPECT_EQ(gen.chain.csr().size(), m.chain.csr().size());
    for (std::size_t r = 0; r < m.chain.size(); ++r)
        for (std::size_t k = 0; k < m.chain.csr().row_columns(r).size(); ++k) {
            const auto c = m.chain.csr().row_columns(r)[k];
            EXPECT_NEAR(gen.chain.csr().at(r, c), m.chain.csr().row_values(r)[k], 1e-15);
        }
    const BuiltModel sto = ingest(dir / (name + ".mtx"));
    EXPECT_EQ(sto.descriptor.kind, MatrixKind::Stochastic);
    EXPECT_EQ(sto.chain.csr(), m.chain.csr());
    std::filesystem::remove_all(dir);
}

TEST(Fixtures, LumpableChainIsExactlyLumpable) {
    const std::vector<std::size_t> sizes{3, 5, 4};
    const LumpableChain lc = lumpable_test_chain(sizes, 42);
    EXPECT_EQ(lc.exactSize, 3u);
    EXPECT_EQ(lc.chain.size(), 12u);
    const Eigen::MatrixXd P = oracle::dense(lc.chain);
    // column sums into each block must agree within a block
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            double first = NAN;
            for (std::size_t t = 0; t < 12; ++t) {
                if (lc.blockOf[t] != b) continue;
                double s = 0.0;
                for (std::size_t r = 0; r < 12; ++r)
                    if (lc.blockOf[r] == a) s += P(Eigen::Index(r), Eigen::Index(t));
                if (std::isnan(first)) first = s;
                EXPECT_NEAR(s, first, 1e-14);
            }
        }
    for (std::size_t r = 0; r < 12; ++r) EXPECT_NEAR(lc.chain.csr().row_sum(r), 1.0, 1e-12);
}

TEST(Fixtures, SpecsParse) {
    EXPECT_EQ(fixture("fixture:identity:5", 0).chain.size(), 5u);
    EXPECT_EQ(fixture("fixture:swap", 0).chain.size(), 2u);
    EXPECT_EQ(fixture("fixture:lumpable:3,5,4", 1).chain.size(), 12u);
    EXPECT_EQ(fixture("fixture:random:33", 1).chain.size(), 33u);
    EXPECT_THROW(fixture("fixture:bogus", 0), InvalidInput);
    EXPECT_THROW(fixture("fixture:random:x", 0), InvalidInput);
}

TEST(Fixtures, RandomChainIsSeededAndIrreducibleCycle) {
    const auto a = random_chain(50, 9), b = random_chain(50, 9), c = random_chain(50, 10);
    EXPECT_EQ(a.csr(), b.csr());
    EXPECT_NE(a.csr(), c.csr());
    for (std::size_t i = 0; i < 50; ++i) EXPECT_GT(a.csr().at(i, (i + 1) % 50), 0.0);
}
