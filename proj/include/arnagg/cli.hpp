#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arnagg/convergence.hpp"
#include "arnagg/models.hpp"

namespace arnagg::cli {

enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kNotConverged = 2,
    kBadInput = 3,
    kOverflow = 4,
};

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct RunConfig {
    std::string model;                          ///< builtin name or "fixture:..."
    std::optional<std::filesystem::path> matrix; ///< MatrixMarket file instead of a model
    models::MatrixKind matrixKind = models::MatrixKind::Auto;
    std::optional<double> rate;                 ///< uniformisation rate for ingested generators
    std::optional<std::uint32_t> cap;           ///< lotka-volterra population cap
    /// initial | index:i | uniform | random | file:PATH
    std::string p0 = "initial";
    std::optional<double> epsilon;
    std::size_t checkEvery = 10;
    std::size_t maxDimension = 0;
    std::string eigenMethod = "auto";           ///< auto | dense | krylov-schur
    std::vector<std::size_t> horizons;
    std::vector<std::size_t> dims;
    std::uint64_t seed = kDefaultSeed;
    std::filesystem::path out = "arnagg-out";
    std::size_t reps = 5;
    bool closedForm = true;                     ///< sweep: closed-form error columns
    std::optional<std::filesystem::path> aggregation; ///< transient: aggregation directory
    bool naive = false;                         ///< transient: compute p_k by the naive method
};

/// Overwrites the fields named in a JSON object whose keys match the long
/// flag names (model, matrix, p0, epsilon, check-every, max-dim, horizons,
/// dims, seed, out, reps, ...). Unknown keys are rejected.
void apply_json(RunConfig& cfg, const std::string& jsonText);
void apply_json_file(RunConfig& cfg, const std::filesystem::path& path);

models::MatrixKind parse_matrix_kind(const std::string& s);
EigenMethod parse_eigen_method(const std::string& s);

/// "1,10,100" or "1e4" style lists of nonnegative integers.
std::vector<std::size_t> parse_index_list(const std::string& text);

models::BuiltModel load_model(const RunConfig& cfg);
Distribution make_initial(const RunConfig& cfg, const models::BuiltModel& model);
CriterionConfig criterion_config(const RunConfig& cfg, std::size_t stateCount);

/// Each command writes its artifacts below cfg.out and a short summary to
/// `out`; warnings go to `err`. Errors propagate as exceptions.
int cmd_aggregate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_transient(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_model_describe(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_model_export(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs `command`, mapping library exceptions to exit codes and printing
/// their message to `err`.
int guarded(const std::function<int()>& command, std::ostream& err);

} // namespace arnagg::cli
