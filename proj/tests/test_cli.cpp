#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "arnagg/aggregation_io.hpp"
#include "arnagg/cli.hpp"
#include "arnagg/error.hpp"

using namespace arnagg;
using namespace arnagg::cli;

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("arnagg_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::vector<std::string> lines(const fs::path& file) {
    std::ifstream in(file);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
    return out;
}

int run_tool(const std::string& args) {
    const char* tool = std::getenv("ARNAGG_TOOL");
    if (!tool) return -1;
    const int status = std::system((std::string(tool) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST(CliParse, IndexLists) {
    EXPECT_EQ(parse_index_list("1,10,100"), (std::vector<std::size_t>{1, 10, 100}));
    EXPECT_EQ(parse_index_list("1e4"), (std::vector<std::size_t>{10000}));
    EXPECT_EQ(parse_index_list(" 2 , 3 "), (std::vector<std::size_t>{2, 3}));
    EXPECT_THROW(parse_index_list("a"), InvalidInput);
    EXPECT_THROW(parse_index_list("-1"), InvalidInput);
}

TEST(CliParse, Enums) {
    EXPECT_EQ(parse_matrix_kind("generator"), models::MatrixKind::Generator);
    EXPECT_EQ(parse_eigen_method("krylov-schur"), EigenMethod::KrylovSchur);
    EXPECT_THROW(parse_matrix_kind("x"), InvalidInput);
    EXPECT_THROW(parse_eigen_method("x"), InvalidInput);
}

TEST(CliParse, JsonConfig) {
    RunConfig cfg;
    apply_json(cfg, R"({"model": "fixture:swap", "epsilon": 1e-9, "check-every": 3, "dims": [1, 2], "p0": "index:1"})");
    EXPECT_EQ(cfg.model, "fixture:swap");
    EXPECT_EQ(cfg.epsilon, 1e-9);
    EXPECT_EQ(cfg.checkEvery, 3u);
    EXPECT_EQ(cfg.dims, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(cfg.p0, "index:1");
    EXPECT_THROW(apply_json(cfg, R"({"nope": 1})"), InvalidInput);
    EXPECT_THROW(apply_json(cfg, "{"), InvalidInput);
}

TEST(CliParse, InitialVectors) {
    RunConfig cfg;
    cfg.model = "fixture:random:10";
    const auto m = load_model(cfg);
    cfg.p0 = "index:3";
    EXPECT_EQ(make_initial(cfg, m)[3], 1.0);
    cfg.p0 = "uniform";
    EXPECT_DOUBLE_EQ(make_initial(cfg, m)[0], 0.1);
    cfg.p0 = "random";
    EXPECT_EQ(make_initial(cfg, m).size(), 10u);
    cfg.p0 = "index:10";
    EXPECT_THROW(make_initial(cfg, m), InvalidInput);
    cfg.p0 = "weird";
    EXPECT_THROW(make_initial(cfg, m), InvalidInput);
}

TEST(CliCommands, AggregateLumpable) {
    RunConfig cfg;
    cfg.model = "fixture:lumpable:3,5,4";
    cfg.epsilon = 1e-12;
    cfg.out = scratch("aggregate");
    std::ostringstream out, err;
    EXPECT_EQ(cmd_aggregate(cfg, out, err), kOk);
    EXPECT_NE(out.str().find("stop_reason="), std::string::npos);
    const ArnoldiAggregation a = io::read_aggregation(cfg.out / "aggregation");
    EXPECT_LE(a.dimension(), 3u);
    const auto trace = lines(cfg.out / "trace.csv");
    ASSERT_GE(trace.size(), 3u);
    EXPECT_EQ(trace[1], "j,criterion,h_next,elapsed_ns,stop_reason");
    fs::remove_all(cfg.out);
}

TEST(CliCommands, AggregateRequiresEpsilonAndReportsMaxDim) {
    RunConfig cfg;
    cfg.model = "fixture:random:80";
    cfg.out = scratch("maxdim");
    std::ostringstream out, err;
    EXPECT_THROW(cmd_aggregate(cfg, out, err), InvalidInput);
    cfg.epsilon = 0.0;
    cfg.maxDimension = 12;
    EXPECT_EQ(cmd_aggregate(cfg, out, err), kNotConverged);
    EXPECT_NE(out.str().find("max-dimension"), std::string::npos);
    fs::remove_all(cfg.out);
}

TEST(CliCommands, SweepRowsMatchLibrary) {
    RunConfig cfg;
    cfg.model = "fixture:random:40";
    cfg.p0 = "random";
    cfg.dims = {1, 3, 8, 99};
    cfg.horizons = {5, 50};
    cfg.out = scratch("sweep");
    std::ostringstream out, err;
    EXPECT_EQ(cmd_sweep(cfg, out, err), kOk);
    EXPECT_NE(err.str().find("skipping dimension 99"), std::string::npos);
    const auto rows = lines(cfg.out / "sweep.csv");
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], "# arnagg sweep v1");
    const auto header = split(rows[1]);
    EXPECT_EQ(header[3], "err_k5");
    const auto m = load_model(cfg);
    const Distribution p0 = make_initial(cfg, m);
    const ArnoldiAggregation a = build_aggregation(p0, m.chain, 8);
    const auto last = split(rows[4]);
    EXPECT_EQ(last[0], "8");
    EXPECT_NEAR(std::stod(last[3]), transient_error(a, p0.values(), m.chain, 5), 1e-15);
    EXPECT_NEAR(std::stod(last[4]), transient_error(a, p0.values(), m.chain, 50), 1e-15);
    fs::remove_all(cfg.out);
}

TEST(CliCommands, TransientAgainstAggregation) {
    RunConfig cfg;
    cfg.model = "fixture:lumpable:2,3";
    cfg.epsilon = 1e-12;
    cfg.out = scratch("transient");
    std::ostringstream out, err;
    ASSERT_EQ(cmd_aggregate(cfg, out, err), kOk);
    cfg.aggregation = cfg.out / "aggregation";
    cfg.naive = true;
    cfg.horizons = {10};
    std::ostringstream tout;
    EXPECT_EQ(cmd_transient(cfg, tout, err), kOk);
    const std::string s = tout.str();
    const auto pos = s.find("l1_difference=");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_LE(std::stod(s.substr(pos + 14)), 1e-11);
    EXPECT_TRUE(fs::exists(cfg.out / "p_k10.txt"));
    EXPECT_TRUE(fs::exists(cfg.out / "ptilde_k10.txt"));
    fs::remove_all(cfg.out);
}

TEST(CliCommands, BenchWritesCsv) {
    RunConfig cfg;
    cfg.model = "fixture:random:60";
    cfg.epsilon = 1e-10;
    cfg.horizons = {100};
    cfg.dims = {5};
    cfg.reps = 1;
    cfg.out = scratch("bench");
    std::ostringstream out, err;
    EXPECT_EQ(cmd_bench(cfg, out, err), kOk);
    EXPECT_NE(err.str().find("low-confidence"), std::string::npos);
    const auto rows = lines(cfg.out / "bench.csv");
    ASSERT_GE(rows.size(), 3u);
    EXPECT_EQ(rows[1], "measure,j,k,median_ns,value,reps,low_confidence");
    fs::remove_all(cfg.out);
}

TEST(CliCommands, ModelDescribe) {
    RunConfig cfg;
    cfg.model = "lotka-volterra";
    cfg.cap = 20;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_model_describe(cfg, out, err), kOk);
    EXPECT_NE(out.str().find("\"stateCount\": 441"), std::string::npos);
}

TEST(CliCommands, GuardedMapsErrors) {
    std::ostringstream err;
    EXPECT_EQ(guarded([]() -> int { throw InvalidInput("x"); }, err), kBadInput);
    EXPECT_EQ(guarded([]() -> int { throw StateSpaceOverflow("x"); }, err), kOverflow);
    EXPECT_EQ(guarded([]() -> int { throw std::runtime_error("x"); }, err), kInternalError);
    EXPECT_EQ(guarded([] { return 0; }, err), kOk);
}

TEST(CliTool, ExitCodes) {
    if (!std::getenv("ARNAGG_TOOL")) GTEST_SKIP() << "ARNAGG_TOOL not set";
    const fs::path out = scratch("tool");
    EXPECT_EQ(run_tool("aggregate --model fixture:identity:4 --epsilon 1e-12 --out " + out.string()), 0);
    EXPECT_EQ(run_tool("aggregate --model fixture:random:60 --epsilon 0 --max-dim 5 --out " + out.string()), 2);
    EXPECT_EQ(run_tool("aggregate --model nope --epsilon 1e-12 --out " + out.string()), 3);
    EXPECT_EQ(run_tool("aggregate --bogus-flag"), 3);
    EXPECT_EQ(run_tool("--help"), 0);
    fs::remove_all(out);
}
