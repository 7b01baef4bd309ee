#include "arnagg/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "arnagg/aggregation_io.hpp"
#include "arnagg/error.hpp"
#include "arnagg/matrix_market.hpp"

namespace arnagg::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t since_ns(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

std::int64_t median(std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path.string());
    return f;
}

std::string fmt(double v) {
    std::ostringstream s;
    io::write_double(s, v);
    return s.str();
}

std::vector<std::size_t> require_horizons(const RunConfig& cfg) {
    if (cfg.horizons.empty()) throw InvalidInput("at least one horizon (--horizons) is required");
    return cfg.horizons;
}

// p_k for every horizon, one sweep over the sorted horizons.
std::vector<Vector> naive_transients(std::span<const double> p0, const SparseStochasticMatrix& P,
                                     std::span<const std::size_t> horizons) {
    std::vector<std::size_t> order(horizons.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return horizons[a] < horizons[b]; });
    std::vector<Vector> out(horizons.size());
    Vector p(p0.begin(), p0.end());
    Vector next(p.size());
    std::size_t at = 0;
    for (std::size_t idx : order) {
        for (; at < horizons[idx]; ++at) {
            spmv_left(p, P.csr(), next);
            p.swap(next);
        }
        out[idx] = p;
    }
    return out;
}

} // namespace

EigenMethod parse_eigen_method(const std::string& s) {
    if (s == "auto") return EigenMethod::Auto;
    if (s == "dense") return EigenMethod::Dense;
    if (s == "krylov-schur") return EigenMethod::KrylovSchur;
    throw InvalidInput("unknown eigen method '" + s + "' (auto, dense, krylov-schur)");
}

models::MatrixKind parse_matrix_kind(const std::string& s) {
    if (s == "auto") return models::MatrixKind::Auto;
    if (s == "generator") return models::MatrixKind::Generator;
    if (s == "stochastic") return models::MatrixKind::Stochastic;
    throw InvalidInput("unknown matrix kind '" + s + "' (auto, generator, stochastic)");
}

namespace {

std::vector<std::size_t> json_list(const nlohmann::json& v) {
    if (v.is_string()) return parse_index_list(v.get<std::string>());
    if (v.is_number_unsigned()) return {v.get<std::size_t>()};
    if (!v.is_array()) throw InvalidInput("expected a list of nonnegative integers");
    std::vector<std::size_t> out;
    for (const auto& e : v) {
        if (!e.is_number_unsigned()) throw InvalidInput("expected a list of nonnegative integers");
        out.push_back(e.get<std::size_t>());
    }
    return out;
}

double criterion_at(const ArnoldiAggregation& agg, const CriterionConfig& ccfg) {
    const EigenOutcome outcome = dominant_eigenvector(agg.hessenberg(), ccfg);
    const auto* real = std::get_if<DominantEigenvector>(&outcome);
    if (!real) return std::numeric_limits<double>::quiet_NaN();
    DominantEigenvector pi = *real;
    normalize_against_basis(pi, agg.basis());
    return criterion_value(pi, agg.residualRowSums);
}

} // namespace

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size() || v < 0.0 ||
            v != std::floor(v) || v > 1e15)
            throw InvalidInput("bad integer list entry '" + std::string(item) + "'");
        out.push_back(std::size_t(v));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

void apply_json(RunConfig& cfg, const std::string& jsonText) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(jsonText);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("config: " + std::string(e.what()));
    }
    if (!j.is_object()) throw InvalidInput("config: expected a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "model") cfg.model = v.get<std::string>();
            else if (key == "matrix") cfg.matrix = v.get<std::string>();
            else if (key == "matrix-kind") cfg.matrixKind = parse_matrix_kind(v.get<std::string>());
            else if (key == "rate") cfg.rate = v.get<double>();
            else if (key == "cap") cfg.cap = v.get<std::uint32_t>();
            else if (key == "p0") cfg.p0 = v.get<std::string>();
            else if (key == "epsilon") cfg.epsilon = v.get<double>();
            else if (key == "check-every") cfg.checkEvery = v.get<std::size_t>();
            else if (key == "max-dim") cfg.maxDimension = v.get<std::size_t>();
            else if (key == "eigen-method") cfg.eigenMethod = v.get<std::string>();
            else if (key == "horizons") cfg.horizons = json_list(v);
            else if (key == "dims") cfg.dims = json_list(v);
            else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
            else if (key == "out") cfg.out = v.get<std::string>();
            else if (key == "reps") cfg.reps = v.get<std::size_t>();
            else if (key == "closed-form") cfg.closedForm = v.get<bool>();
            else if (key == "aggregation") cfg.aggregation = v.get<std::string>();
            else if (key == "naive") cfg.naive = v.get<bool>();
            else throw InvalidInput("config: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("config: " + std::string(e.what()));
    }
}

void apply_json_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config " + path.string());
    std::stringstream s;
    s << f.rdbuf();
    apply_json(cfg, s.str());
}

models::BuiltModel load_model(const RunConfig& cfg) {
    if (cfg.matrix) {
        if (!std::filesystem::exists(*cfg.matrix)) throw InvalidInput("matrix file not found: " + cfg.matrix->string());
        const std::string name = cfg.model.empty() ? cfg.matrix->stem().string() : cfg.model;
        if (name == "rsvp-ingest") {
            models::BuiltinOptions opts;
            opts.matrixPath = cfg.matrix;
            opts.kind = cfg.matrixKind;
            return models::builtin(name, opts);
        }
        return models::ingest(*cfg.matrix, cfg.matrixKind, cfg.rate, name);
    }
    if (cfg.model.empty()) throw InvalidInput("no model given (--model or --matrix)");
    models::BuiltinOptions opts;
    opts.cap = cfg.cap;
    opts.kind = cfg.matrixKind;
    return models::load_model(cfg.model, opts, cfg.seed);
}

Distribution make_initial(const RunConfig& cfg, const models::BuiltModel& model) {
    const std::size_t n = model.chain.size();
    const std::string& s = cfg.p0;
    if (s == "initial") return model.initial_distribution();
    if (s == "uniform") return Distribution::uniform(n);
    if (s == "random") return models::random_distribution(n, cfg.seed);
    if (s.rfind("index:", 0) == 0) {
        const auto idx = parse_index_list(s.substr(6));
        if (idx.size() != 1 || idx[0] >= n) throw InvalidInput("p0 index out of range: " + s);
        return Distribution::point_mass(n, idx[0]);
    }
    if (s.rfind("file:", 0) == 0) {
        Vector v = io::read_vector(std::filesystem::path(s.substr(5)));
        if (v.size() != n) throw InvalidInput("p0 file length differs from the number of states");
        return Distribution(std::move(v));
    }
    throw InvalidInput("unknown p0 '" + s + "' (initial, index:i, uniform, random, file:PATH)");
}

CriterionConfig criterion_config(const RunConfig& cfg, std::size_t stateCount) {
    CriterionConfig c;
    if (cfg.epsilon) c.epsilon = *cfg.epsilon;
    c.checkEvery = cfg.checkEvery;
    c.maxDimension = cfg.maxDimension;
    if (c.maxDimension > stateCount) c.maxDimension = stateCount;
    c.eigenMethod = parse_eigen_method(cfg.eigenMethod);
    c.seed = cfg.seed;
    return c;
}

int cmd_aggregate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    if (!cfg.epsilon) throw InvalidInput("--epsilon is required");
    const models::BuiltModel model = load_model(cfg);
    const Distribution p0 = make_initial(cfg, model);
    const CriterionConfig ccfg = criterion_config(cfg, model.chain.size());
    const AdaptiveResult result = run_adaptive(p0.values(), model.chain, ccfg);

    io::write_aggregation(cfg.out / "aggregation", result.aggregation);
    {
        auto f = open_output(cfg.out / "trace.csv");
        write_trace_csv(f, result);
    }
    out << "stop_reason=" << to_string(result.reason) << '\n';
    out << "j=" << result.aggregation.dimension() << '\n';
    out << "criterion=" << fmt(result.criterion) << '\n';
    return result.converged() ? kOk : kNotConverged;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::vector<std::size_t> horizons = require_horizons(cfg);
    if (cfg.dims.empty()) throw InvalidInput("at least one dimension (--dims) is required");
    if (!std::is_sorted(cfg.dims.begin(), cfg.dims.end())) throw InvalidInput("--dims must be sorted ascending");
    const models::BuiltModel model = load_model(cfg);
    const SparseStochasticMatrix& P = model.chain;
    const std::size_t n = P.size();
    const Distribution p0 = make_initial(cfg, model);
    CriterionConfig ccfg = criterion_config(cfg, n);
    if (!cfg.epsilon) ccfg.epsilon = 0.0;

    std::vector<std::size_t> dims;
    for (std::size_t j : cfg.dims) {
        if (j == 0 || j > n) {
            err << "warning: skipping dimension " << j << " (valid range 1.." << n << ")\n";
            continue;
        }
        dims.push_back(j);
    }

    const std::vector<Vector> exact = naive_transients(p0.values(), P, horizons);

    auto f = open_output(cfg.out / "sweep.csv");
    f << "# arnagg sweep v1\n";
    f << "j,dimension,invariant";
    for (std::size_t k : horizons) f << ",err_k" << k;
    if (cfg.closedForm)
        for (std::size_t k : horizons) f << ",closed_form_k" << k;
    for (std::size_t k : horizons) f << ",bound_k" << k;
    f << ",criterion,residual_norm1,boundary_abs,dynamic_residual,build_ns,eval_ns\n";

    std::int64_t buildNs = 0;
    std::optional<ArnoldiState> state;
    if (!dims.empty()) {
        const auto t0 = Clock::now();
        state.emplace(p0.values(), P, ArnoldiOptions{});
        buildNs += since_ns(t0);
    }
    for (std::size_t j : dims) {
        while (state->dimension() < j && !state->invariant()) {
            const auto t0 = Clock::now();
            state->expand(P);
            buildNs += since_ns(t0);
        }
        const ArnoldiAggregation agg = state->snapshot(std::min(j, state->dimension()));

        const auto t0 = Clock::now();
        const std::vector<Vector> approx = approx_transients(agg.triple, horizons);
        const std::int64_t evalNs = since_ns(t0);

        const std::vector<double> bounds = error_bounds(agg, horizons);
        const NaiveCriteria naive = naive_criteria(agg);

        f << j << ',' << agg.dimension() << ',' << (agg.invariant ? 1 : 0);
        for (std::size_t h = 0; h < horizons.size(); ++h) f << ',' << fmt(l1_distance(approx[h], exact[h]));
        if (cfg.closedForm)
            for (std::size_t k : horizons) f << ',' << fmt(closed_form_error(agg, P, k));
        for (double b : bounds) f << ',' << fmt(b);
        f << ',' << fmt(criterion_at(agg, ccfg)) << ',' << fmt(naive.residualNorm1) << ',' << fmt(naive.boundaryAbs)
          << ',' << fmt(naive.dynamicResidual) << ',' << buildNs << ',' << evalNs << '\n';
        if (agg.invariant && agg.dimension() < j) err << "note: Krylov space invariant at j=" << agg.dimension() << '\n';
    }
    out << "rows=" << dims.size() << '\n';
    out << "csv=" << (cfg.out / "sweep.csv").string() << '\n';
    return kOk;
}

int cmd_transient(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const std::vector<std::size_t> horizons = require_horizons(cfg);
    if (!cfg.aggregation && !cfg.naive) throw InvalidInput("transient needs --aggregation DIR or --naive");
    std::optional<ArnoldiAggregation> agg;
    if (cfg.aggregation) agg = io::read_aggregation(*cfg.aggregation);

    const bool haveModel = cfg.matrix || !cfg.model.empty();
    if (cfg.naive && !haveModel) throw InvalidInput("--naive needs --model or --matrix");
    std::optional<models::BuiltModel> model;
    std::optional<Distribution> p0;
    if (haveModel) {
        model = load_model(cfg);
        p0 = make_initial(cfg, *model);
        if (agg && agg->state_count() != model->chain.size())
            throw InvalidInput("aggregation and model have different numbers of states");
    }

    std::vector<Vector> exact;
    if (model) exact = naive_transients(p0->values(), model->chain, horizons);
    std::vector<Vector> approx;
    if (agg) approx = approx_transients(agg->triple, horizons);

    for (std::size_t h = 0; h < horizons.size(); ++h) {
        const std::string suffix = "_k" + std::to_string(horizons[h]) + ".txt";
        if (!exact.empty()) io::write_vector(cfg.out / ("p" + suffix), exact[h]);
        if (!approx.empty()) io::write_vector(cfg.out / ("ptilde" + suffix), approx[h]);
        out << "k=" << horizons[h];
        if (!exact.empty() && !approx.empty()) out << " l1_difference=" << fmt(l1_distance(exact[h], approx[h]));
        out << '\n';
    }
    return kOk;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::vector<std::size_t> horizons = require_horizons(cfg);
    if (cfg.reps == 0) throw InvalidInput("--reps must be at least 1");
    const models::BuiltModel model = load_model(cfg);
    const SparseStochasticMatrix& P = model.chain;
    const std::size_t n = P.size();
    const Distribution p0 = make_initial(cfg, model);
    const std::size_t reps = cfg.reps;
    const bool lowConfidence = reps == 1;
    if (lowConfidence) err << "warning: a single repetition gives low-confidence timings\n";

    auto f = open_output(cfg.out / "bench.csv");
    f << "# arnagg bench v1\n";
    f << "measure,j,k,median_ns,value,reps,low_confidence\n";
    const auto row = [&](const char* measure, std::size_t j, std::size_t k, std::int64_t ns, double value) {
        f << measure << ',' << j << ',' << k << ',' << ns << ',' << fmt(value) << ',' << reps << ','
          << (lowConfidence ? 1 : 0) << '\n';
    };

    std::vector<std::int64_t> naiveNs(horizons.size());
    for (std::size_t h = 0; h < horizons.size(); ++h) {
        std::vector<std::int64_t> t(reps);
        for (auto& v : t) {
            const auto t0 = Clock::now();
            const Vector p = transient_naive(p0.values(), P, horizons[h]);
            v = since_ns(t0);
        }
        naiveNs[h] = median(t);
        row("naive", 0, horizons[h], naiveNs[h], std::nan(""));
    }

    std::vector<std::size_t> dims;
    for (std::size_t j : cfg.dims)
        if (j >= 1 && j <= n) dims.push_back(j);
    std::sort(dims.begin(), dims.end());
    if (!dims.empty()) {
        std::vector<std::vector<std::int64_t>> t(dims.size(), std::vector<std::int64_t>(reps, 0));
        for (std::size_t r = 0; r < reps; ++r) {
            const auto t0 = Clock::now();
            ArnoldiState state(p0.values(), P);
            for (std::size_t d = 0; d < dims.size(); ++d) {
                while (state.dimension() < dims[d] && state.expand(P) == ExpandStatus::Expanded) {
                }
                t[d][r] = since_ns(t0);
            }
        }
        for (std::size_t d = 0; d < dims.size(); ++d) row("arnoldi", dims[d], 0, median(t[d]), std::nan(""));
    }

    if (cfg.epsilon) {
        const CriterionConfig ccfg = criterion_config(cfg, n);
        std::vector<std::int64_t> adaptive(reps), plain(reps);
        std::optional<AdaptiveResult> result;
        for (std::size_t r = 0; r < reps; ++r) {
            auto t0 = Clock::now();
            result = run_adaptive(p0.values(), P, ccfg);
            adaptive[r] = since_ns(t0);
            const std::size_t j = result->aggregation.dimension();
            t0 = Clock::now();
            ArnoldiState state(p0.values(), P);
            while (state.dimension() < j && state.expand(P) == ExpandStatus::Expanded) {
            }
            plain[r] = since_ns(t0);
        }
        const std::size_t j = result->aggregation.dimension();
        const std::int64_t adaptiveNs = median(adaptive);
        const std::int64_t plainNs = median(plain);
        row("adaptive", j, 0, adaptiveNs, result->criterion);
        row("criterion_share", j, 0, adaptiveNs, adaptiveNs > 0 ? double(adaptiveNs - plainNs) / double(adaptiveNs) : 0.0);
        for (std::size_t h = 0; h < horizons.size(); ++h) {
            std::vector<std::int64_t> t(reps);
            for (auto& v : t) {
                const auto t0 = Clock::now();
                const Vector p = approx_transient(result->aggregation.triple, horizons[h]);
                v = since_ns(t0);
            }
            const std::int64_t ptildeNs = median(t);
            row("ptilde", j, horizons[h], ptildeNs, std::nan(""));
            row("speedup", j, horizons[h], adaptiveNs + ptildeNs, double(naiveNs[h]) / double(adaptiveNs + ptildeNs));
        }
        out << "adaptive_j=" << j << '\n';
    }
    out << "csv=" << (cfg.out / "bench.csv").string() << '\n';
    return kOk;
}

int cmd_model_describe(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const models::BuiltModel model = load_model(cfg);
    out << models::descriptor_json(model.descriptor) << '\n';
    return kOk;
}

int cmd_model_export(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const models::BuiltModel model = load_model(cfg);
    models::export_model(model, cfg.out);
    out << "exported " << model.descriptor.name << " (" << model.descriptor.stateCount << " states) to "
        << cfg.out.string() << '\n';
    return kOk;
}

int guarded(const std::function<int()>& command, std::ostream& err) {
    try {
        return command();
    } catch (const StateSpaceOverflow& e) {
        err << "error: " << e.what() << '\n';
        return kOverflow;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

} // namespace arnagg::cli
