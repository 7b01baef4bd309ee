#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "arnagg/cli.hpp"

using arnagg::cli::RunConfig;

namespace {

struct Flags {
    std::string config;
    std::string model;
    std::string matrix;
    std::string matrixKind;
    double rate = 0.0;
    std::uint32_t cap = 0;
    std::string p0;
    double epsilon = 0.0;
    std::size_t checkEvery = 0;
    std::size_t maxDim = 0;
    std::string eigenMethod;
    std::string horizons;
    std::string dims;
    std::uint64_t seed = 0;
    std::string out;
    std::size_t reps = 0;
    bool noClosedForm = false;
    std::string aggregation;
    bool naive = false;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON file with the same keys as the long flags");
    cmd->add_option("--model", f.model, "builtin model or fixture:identity:N | fixture:swap | fixture:lumpable:3,5,4 | fixture:random:N");
    cmd->add_option("--matrix", f.matrix, "MatrixMarket generator or stochastic matrix");
    cmd->add_option("--matrix-kind", f.matrixKind, "auto | generator | stochastic");
    cmd->add_option("--rate", f.rate, "uniformisation rate for an ingested generator");
    cmd->add_option("--cap", f.cap, "population cap (lotka-volterra)");
    cmd->add_option("--p0", f.p0, "initial | index:i | uniform | random | file:PATH");
    cmd->add_option("--seed", f.seed, "seed for random fixtures, p0 and the eigensolver");
    cmd->add_option("--out", f.out, "output directory");
}

void add_criterion(CLI::App* cmd, Flags& f) {
    cmd->add_option("--epsilon", f.epsilon, "criterion threshold");
    cmd->add_option("--check-every", f.checkEvery, "expansions between criterion checks");
    cmd->add_option("--max-dim", f.maxDim, "largest aggregation dimension");
    cmd->add_option("--eigen-method", f.eigenMethod, "auto | dense | krylov-schur");
}

bool given(CLI::App* cmd, const char* name) { return cmd->count(name) > 0; }

RunConfig build_config(CLI::App* cmd, const Flags& f) {
    RunConfig cfg;
    if (given(cmd, "--config")) arnagg::cli::apply_json_file(cfg, f.config);
    const auto has = [&](const char* name) {
        try {
            return given(cmd, name);
        } catch (const CLI::OptionNotFound&) {
            return false;
        }
    };
    if (has("--model")) cfg.model = f.model;
    if (has("--matrix")) cfg.matrix = f.matrix;
    if (has("--matrix-kind")) cfg.matrixKind = arnagg::cli::parse_matrix_kind(f.matrixKind);
    if (has("--rate")) cfg.rate = f.rate;
    if (has("--cap")) cfg.cap = f.cap;
    if (has("--p0")) cfg.p0 = f.p0;
    if (has("--epsilon")) cfg.epsilon = f.epsilon;
    if (has("--check-every")) cfg.checkEvery = f.checkEvery;
    if (has("--max-dim")) cfg.maxDimension = f.maxDim;
    if (has("--eigen-method")) cfg.eigenMethod = f.eigenMethod;
    if (has("--horizons")) cfg.horizons = arnagg::cli::parse_index_list(f.horizons);
    if (has("--dims")) cfg.dims = arnagg::cli::parse_index_list(f.dims);
    if (has("--seed")) cfg.seed = f.seed;
    if (has("--out")) cfg.out = f.out;
    if (has("--reps")) cfg.reps = f.reps;
    if (has("--no-closed-form")) cfg.closedForm = false;
    if (has("--aggregation")) cfg.aggregation = f.aggregation;
    if (has("--naive")) cfg.naive = true;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arnoldi aggregation of Markov chains"};
    app.require_subcommand(1);
    Flags f;

    auto* aggregate = app.add_subcommand("aggregate", "adaptive aggregation; writes the aggregation and a trace");
    add_common(aggregate, f);
    add_criterion(aggregate, f);

    auto* sweep = app.add_subcommand("sweep", "errors, bounds and criteria over a list of dimensions");
    add_common(sweep, f);
    add_criterion(sweep, f);
    sweep->add_option("--dims", f.dims, "ascending dimensions, e.g. 10,20,50");
    sweep->add_option("--horizons", f.horizons, "step counts k, e.g. 100,1e4");
    sweep->add_flag("--no-closed-form", f.noClosedForm, "skip the closed-form error columns");

    auto* transient = app.add_subcommand("transient", "write p_k and/or the aggregated approximation");
    add_common(transient, f);
    transient->add_option("--horizons", f.horizons, "step counts k");
    transient->add_option("--aggregation", f.aggregation, "aggregation directory");
    transient->add_flag("--naive", f.naive, "compute p_k by repeated products");

    auto* bench = app.add_subcommand("bench", "timings (median of --reps)");
    add_common(bench, f);
    add_criterion(bench, f);
    bench->add_option("--dims", f.dims, "dimensions for the plain iteration");
    bench->add_option("--horizons", f.horizons, "step counts k");
    bench->add_option("--reps", f.reps, "repetitions (default 5)");

    auto* model = app.add_subcommand("model", "describe or export a model");
    model->require_subcommand(1);
    auto* describe = model->add_subcommand("describe", "print the model descriptor");
    add_common(describe, f);
    auto* exporter = model->add_subcommand("export", "write MatrixMarket files and a JSON descriptor");
    add_common(exporter, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : arnagg::cli::kBadInput;
    }

    return arnagg::cli::guarded(
        [&]() -> int {
            if (aggregate->parsed()) return arnagg::cli::cmd_aggregate(build_config(aggregate, f), std::cout, std::cerr);
            if (sweep->parsed()) return arnagg::cli::cmd_sweep(build_config(sweep, f), std::cout, std::cerr);
            if (transient->parsed())
                return arnagg::cli::cmd_transient(build_config(transient, f), std::cout, std::cerr);
            if (bench->parsed()) return arnagg::cli::cmd_bench(build_config(bench, f), std::cout, std::cerr);
            if (describe->parsed())
                return arnagg::cli::cmd_model_describe(build_config(describe, f), std::cout, std::cerr);
            return arnagg::cli::cmd_model_export(build_config(exporter, f), std::cout, std::cerr);
        },
        std::cerr);
}
