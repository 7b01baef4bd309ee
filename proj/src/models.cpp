#include "arnagg/models.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <tuple>

#include "json.hpp"

#include "arnagg/error.hpp"
#include "arnagg/matrix_market.hpp"

namespace arnagg::models {

namespace {

constexpr double kLotkaVolterraRate = 2078.0;
constexpr double kWorkstationRate = 50.08;
constexpr double kGeneExpressionRate = 16.78;
constexpr double kRsvpRate = 30.01;

namespace ws {
constexpr double wsFail = 1.0 / 500.0;
constexpr double switchFail = 1.0 / 4000.0;
constexpr double lineFail = 1.0 / 5000.0;
constexpr double inspect = 10.0;
constexpr double wsRepair = 2.0;
constexpr double switchRepair = 0.25;
constexpr double lineRepair = 0.125;
} // namespace ws

std::size_t species_index(const ReactionNetwork& net, const std::string& name) {
    const auto it = std::find(net.species.begin(), net.species.end(), name);
    if (it == net.species.end()) throw InvalidInput("unknown species '" + name + "'");
    return std::size_t(it - net.species.begin());
}

// Firing r in `state`; false when blocked by a cap or when the propensity is 0.
bool fire(const ReactionNetwork& net, const Reaction& r, const Population& state, Population& next) {
    next = state;
    for (std::size_t s = 0; s < state.size(); ++s) {
        if (state[s] < r.input[s]) return false;
        const std::uint64_t v = std::uint64_t(state[s]) - r.input[s] + r.output[s];
        if (v > net.populationCap[s]) return false;
        next[s] = std::uint32_t(v);
    }
    return true;
}

void check_limit(std::size_t size, std::size_t limit) {
    if (size > limit)
        throw StateSpaceOverflow("state space exceeds the limit of " + std::to_string(limit) + " states");
}

std::vector<std::size_t> parse_sizes(std::string_view text) {
    std::vector<std::size_t> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        std::size_t v = 0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc() || res.ptr != item.data() + item.size() || v == 0)
            throw InvalidInput("bad fixture size '" + std::string(item) + "'");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (out.empty()) throw InvalidInput("fixture needs at least one size");
    return out;
}

std::string_view kind_name(MatrixKind k) {
    switch (k) {
    case MatrixKind::Generator: return "generator";
    case MatrixKind::Stochastic: return "stochastic";
    case MatrixKind::Auto: return "auto";
    }
    return "auto";
}

BuiltModel from_chain(std::string name, SparseStochasticMatrix P, std::string description) {
    BuiltModel m;
    m.descriptor.name = std::move(name);
    m.descriptor.stateCount = P.size();
    m.descriptor.kind = MatrixKind::Stochastic;
    m.descriptor.description = std::move(description);
    m.chain = std::move(P);
    return m;
}

} // namespace

std::size_t PopulationHash::operator()(const Population& p) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t v : p) {
        h ^= v;
        h *= 0x100000001b3ULL;
    }
    return std::size_t(h);
}

void ReactionNetwork::validate() const {
    const std::size_t s = species_count();
    if (s == 0) throw InvalidInput("reaction network has no species");
    if (populationCap.size() != s) throw InvalidInput("population cap length differs from species count");
    for (std::uint32_t c : populationCap)
        if (c < 1) throw InvalidInput("population caps must be at least 1");
    for (const Reaction& r : reactions) {
        if (r.input.size() != s || r.output.size() != s)
            throw InvalidInput("stoichiometry length differs from species count");
        if (!(r.rate > 0.0) || !std::isfinite(r.rate)) throw InvalidInput("reaction rates must be positive");
    }
}

void ReactionNetwork::add_reaction(const std::vector<std::string>& input, const std::vector<std::string>& output,
                                   double rate) {
    Reaction r;
    r.input.assign(species_count(), 0);
    r.output.assign(species_count(), 0);
    for (const auto& name : input) ++r.input[species_index(*this, name)];
    for (const auto& name : output) ++r.output[species_index(*this, name)];
    r.rate = rate;
    reactions.push_back(std::move(r));
}

std::optional<std::size_t> StateSpace::find(const Population& p) const {
    const auto it = index.find(p);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

double propensity(const Reaction& r, const Population& state) {
    double a = r.rate;
    for (std::size_t s = 0; s < state.size(); ++s)
        for (std::uint32_t t = 0; t < r.input[s]; ++t) {
            if (state[s] <= t) return 0.0;
            a *= double(state[s] - t);
        }
    return a;
}

StateSpace enumerate_state_space(const ReactionNetwork& net, const Population& initial, std::size_t limit) {
    net.validate();
    if (initial.size() != net.species_count()) throw InvalidInput("initial state length differs from species count");
    for (std::size_t s = 0; s < initial.size(); ++s)
        if (initial[s] > net.populationCap[s]) throw InvalidInput("initial state exceeds a population cap");

    StateSpace space;
    space.states.push_back(initial);
    space.index.emplace(initial, 0);
    Population next;
    for (std::size_t at = 0; at < space.states.size(); ++at) {
        const Population current = space.states[at];
        for (const Reaction& r : net.reactions) {
            if (propensity(r, current) <= 0.0 || !fire(net, r, current, next)) continue;
            if (space.index.emplace(next, space.states.size()).second) {
                space.states.push_back(next);
                check_limit(space.states.size(), limit);
            }
        }
    }
    return space;
}

SparseGeneratorMatrix build_generator(const ReactionNetwork& net, const StateSpace& space) {
    net.validate();
    std::vector<Triplet> triplets;
    Population next;
    for (std::size_t i = 0; i < space.size(); ++i) {
        const Population& current = space.states[i];
        double exit = 0.0;
        for (const Reaction& r : net.reactions) {
            const double a = propensity(r, current);
            if (a <= 0.0 || !fire(net, r, current, next)) continue;
            const auto j = space.find(next);
            if (!j) throw InvalidInput("state space is not closed under the reactions");
            if (*j == i) continue;
            triplets.push_back({i, *j, a});
            exit += a;
        }
        if (exit > 0.0) triplets.push_back({i, i, -exit});
    }
    return SparseGeneratorMatrix(CsrMatrix::from_triplets(space.size(), std::move(triplets)));
}

ExploredChain explore(const Population& initial, const SuccessorFn& successors, std::size_t limit) {
    ExploredChain out;
    StateSpace& space = out.space;
    space.states.push_back(initial);
    space.index.emplace(initial, 0);
    std::vector<Triplet> triplets;
    std::vector<std::pair<Population, double>> succ;
    for (std::size_t at = 0; at < space.states.size(); ++at) {
        succ.clear();
        successors(space.states[at], succ);
        double exit = 0.0;
        for (auto& [target, rate] : succ) {
            if (!(rate > 0.0)) continue;
            const auto [it, fresh] = space.index.emplace(target, space.states.size());
            if (fresh) {
                space.states.push_back(target);
                check_limit(space.states.size(), limit);
            }
            if (it->second == at) continue;
            triplets.push_back({at, it->second, rate});
            exit += rate;
        }
        if (exit > 0.0) triplets.push_back({at, at, -exit});
    }
    out.generator = SparseGeneratorMatrix(CsrMatrix::from_triplets(space.size(), std::move(triplets)));
    return out;
}

ReactionNetwork lotka_volterra_network(std::uint32_t cap) {
    ReactionNetwork net;
    net.species = {"X", "Y"};
    net.populationCap = {cap, cap};
    net.add_reaction({"X"}, {"X", "X"}, 10.0);
    net.add_reaction({"X", "Y"}, {"Y", "Y"}, 0.01);
    net.add_reaction({"Y"}, {}, 10.0);
    return net;
}

Population lotka_volterra_initial(std::uint32_t cap) { return {cap / 2, cap / 2}; }

ReactionNetwork gene_expression_network() {
    ReactionNetwork net;
    net.species = {"PLac",     "RNAP",      "PLacRNAP", "TrLacZ1", "RbsLacZ", "TrLacZ2",
                   "Ribosome", "RbsRibosomeLacZ", "TrRbsLacZ", "LacZ", "dgrLacZ", "dgrRbsLacZ"};
    net.populationCap.assign(net.species.size(), 5);
    net.add_reaction({"PLac", "RNAP"}, {"PLacRNAP"}, 0.17);
    net.add_reaction({"PLacRNAP"}, {"PLac", "RNAP"}, 10.0);
    net.add_reaction({"PLacRNAP"}, {"TrLacZ1"}, 1.0);
    net.add_reaction({"TrLacZ1"}, {"RbsLacZ", "PLac", "TrLacZ2"}, 1.0);
    net.add_reaction({"TrLacZ2"}, {"RNAP"}, 0.015);
    net.add_reaction({"Ribosome", "RbsLacZ"}, {"RbsRibosomeLacZ"}, 0.17);
    net.add_reaction({"RbsRibosomeLacZ"}, {"Ribosome", "RbsLacZ"}, 0.45);
    net.add_reaction({"RbsRibosomeLacZ"}, {"TrRbsLacZ", "RbsLacZ"}, 0.4);
    net.add_reaction({"TrRbsLacZ"}, {"LacZ"}, 0.015);
    net.add_reaction({"LacZ"}, {"dgrLacZ"}, 6.42e-5);
    net.add_reaction({"RbsLacZ"}, {"dgrRbsLacZ"}, 0.3);
    return net;
}

Population gene_expression_initial() { return {1, 3, 0, 0, 0, 0, 5, 0, 0, 0, 0, 0}; }

std::vector<std::string> workstation_cluster_labels() {
    return {"left_up",      "left_repairing",    "right_up",          "right_repairing",
            "repair_busy",  "line_repairing",    "line_up",           "toleft_repairing",
            "toleft_up",    "toright_repairing", "toright_up"};
}

ExploredChain workstation_cluster(std::uint32_t workstations) {
    if (workstations == 0) throw InvalidInput("workstation cluster needs at least one workstation");
    const std::uint32_t N = workstations;
    enum : std::size_t { LeftUp, LeftRep, RightUp, RightRep, Busy, LineRep, LineUp, TlRep, TlUp, TrRep, TrUp };

    using namespace ws;
    const auto successors = [=](const Population& s, std::vector<std::pair<Population, double>>& out) {
        const auto with = [&](std::initializer_list<std::pair<std::size_t, std::uint32_t>> changes, double rate) {
            Population t = s;
            for (const auto& [field, value] : changes) t[field] = value;
            out.emplace_back(std::move(t), rate);
        };
        // Workstation clusters: repair one machine at a time while any is down.
        for (const auto& [up, rep] : {std::pair{LeftUp, LeftRep}, std::pair{RightUp, RightRep}}) {
            if (!s[rep] && s[up] < N && !s[Busy]) with({{rep, 1}, {Busy, 1}}, inspect);
            if (s[rep] && s[up] < N && s[Busy]) with({{up, s[up] + 1}, {rep, 0}, {Busy, 0}}, wsRepair);
            if (s[up] > 0) with({{up, s[up] - 1}}, s[up] * wsFail);
        }
        // Backbone and the two switches: up/down components.
        const std::tuple<std::size_t, std::size_t, double, double> parts[] = {
            {LineUp, LineRep, lineRepair, lineFail},
            {TlUp, TlRep, switchRepair, switchFail},
            {TrUp, TrRep, switchRepair, switchFail},
        };
        for (const auto& [up, rep, repairRate, failRate] : parts) {
            if (!s[rep] && !s[up] && !s[Busy]) with({{rep, 1}, {Busy, 1}}, inspect);
            if (s[rep] && !s[up] && s[Busy]) with({{rep, 0}, {Busy, 0}, {up, 1}}, repairRate);
            if (s[up]) with({{up, 0}}, failRate);
        }
    };

    Population initial(11, 0);
    initial[LeftUp] = N;
    initial[RightUp] = N;
    initial[LineUp] = 1;
    initial[TlUp] = 1;
    initial[TrUp] = 1;
    return explore(initial, successors);
}

Distribution BuiltModel::initial_distribution() const {
    if (initial) return *initial;
    return Distribution::point_mass(chain.size(), descriptor.initialState);
}

std::vector<std::string> builtin_names() {
    return {"lotka-volterra", "workstation-cluster", "gene-expression", "rsvp-ingest"};
}

BuiltModel from_generator(std::string name, SparseGeneratorMatrix Q, std::size_t initialState,
                          std::optional<double> publishedRate, std::string description) {
    if (initialState >= Q.size()) throw InvalidInput("initial state out of range");
    const double maxExit = Q.max_exit_rate();
    double rate = std::max(publishedRate.value_or(0.0), maxExit);
    if (rate == 0.0) rate = 1.0;
    BuiltModel m;
    m.descriptor.name = std::move(name);
    m.descriptor.stateCount = Q.size();
    m.descriptor.uniformisationRate = rate;
    m.descriptor.publishedRate = publishedRate;
    m.descriptor.maxExitRate = maxExit;
    m.descriptor.initialState = initialState;
    m.descriptor.kind = MatrixKind::Generator;
    m.descriptor.description = std::move(description);
    m.chain = uniformise(Q, rate).chain;
    m.generator = std::move(Q);
    return m;
}

BuiltModel builtin(std::string_view name, const BuiltinOptions& options) {
    if (name == "lotka-volterra") {
        const std::uint32_t cap = options.cap.value_or(100);
        const auto net = lotka_volterra_network(cap);
        const auto space = enumerate_state_space(net, lotka_volterra_initial(cap));
        std::optional<double> published;
        if (cap == 100) published = kLotkaVolterraRate;
        return from_generator("lotka-volterra", build_generator(net, space), 0, published,
                              "predator-prey network X->2X (10), X+Y->2Y (0.01), Y->0 (10), cap " +
                                  std::to_string(cap) + " per species, initial (" + std::to_string(cap / 2) + ", " +
                                  std::to_string(cap / 2) + ")");
    }
    if (name == "workstation-cluster") {
        auto explored = workstation_cluster(20);
        return from_generator("workstation-cluster", std::move(explored.generator), 0, kWorkstationRate,
                              "two clusters of 20 workstations, switches and backbone, one repair unit");
    }
    if (name == "gene-expression") {
        const auto net = gene_expression_network();
        const auto space = enumerate_state_space(net, gene_expression_initial());
        return from_generator("gene-expression", build_generator(net, space), 0, kGeneExpressionRate,
                              "prokaryotic lacZ expression network, cap 5 on every species");
    }
    if (name == "rsvp-ingest") {
        if (!options.matrixPath) throw InvalidInput("rsvp-ingest needs a matrix file");
        if (!std::filesystem::exists(*options.matrixPath))
            throw InvalidInput("matrix file not found: " + options.matrixPath->string());
        auto m = ingest(*options.matrixPath, options.kind, kRsvpRate, "rsvp-ingest");
        if (m.generator) m.descriptor.publishedRate = kRsvpRate;
        return m;
    }
    throw InvalidInput("unknown model '" + std::string(name) + "'");
}

BuiltModel ingest(const std::filesystem::path& path, MatrixKind kind, std::optional<double> rate, std::string name) {
    CsrMatrix m = io::read_matrix_market(path);
    if (kind == MatrixKind::Auto) {
        double worst0 = 0.0;
        double worst1 = 0.0;
        for (std::size_t r = 0; r < m.size(); ++r) {
            const double s = m.row_sum(r);
            worst0 = std::max(worst0, std::abs(s));
            worst1 = std::max(worst1, std::abs(s - 1.0));
        }
        if (worst0 <= SparseGeneratorMatrix::kRowSumTolerance) kind = MatrixKind::Generator;
        else if (worst1 <= SparseStochasticMatrix::kRowSumTolerance) kind = MatrixKind::Stochastic;
        else throw InvalidInput("matrix rows sum neither to 0 nor to 1: " + path.string());
    }
    const std::string description = "ingested from " + path.filename().string();
    if (kind == MatrixKind::Stochastic) return from_chain(std::move(name), SparseStochasticMatrix(std::move(m)), description);

    SparseGeneratorMatrix Q(std::move(m));
    const double maxExit = Q.max_exit_rate();
    double used = rate ? std::max(*rate, maxExit) : maxExit * kDefaultRateFactor;
    if (used == 0.0) used = 1.0;
    BuiltModel out = from_generator(std::move(name), std::move(Q), 0, std::nullopt, description);
    if (used != out.descriptor.uniformisationRate) {
        out.chain = uniformise(*out.generator, used).chain;
        out.descriptor.uniformisationRate = used;
    }
    return out;
}

std::string descriptor_json(const ModelDescriptor& d) {
    nlohmann::ordered_json j;
    j["name"] = d.name;
    j["stateCount"] = d.stateCount;
    j["kind"] = kind_name(d.kind);
    j["uniformisationRate"] = d.uniformisationRate;
    j["publishedRate"] = d.publishedRate ? nlohmann::ordered_json(*d.publishedRate) : nlohmann::ordered_json();
    j["maxExitRate"] = d.maxExitRate;
    j["initialState"] = d.initialState;
    j["description"] = d.description;
    return j.dump(2);
}

void export_model(const BuiltModel& model, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const std::string& name = model.descriptor.name;
    io::write_matrix_market(dir / (name + ".mtx"), model.chain.csr());
    if (model.generator) io::write_matrix_market(dir / (name + ".generator.mtx"), model.generator->csr());
    std::ofstream f(dir / (name + ".json"));
    if (!f) throw IoError("cannot write " + (dir / (name + ".json")).string());
    f << descriptor_json(model.descriptor) << '\n';
}

LumpableChain lumpable_test_chain(const std::vector<std::size_t>& blockSizes, std::uint64_t seed) {
    if (blockSizes.empty()) throw InvalidInput("lumpable_test_chain needs at least one block");
    for (std::size_t s : blockSizes)
        if (s == 0) throw InvalidInput("lumpable_test_chain: empty block");
    const std::size_t m = blockSizes.size();
    std::vector<std::size_t> start(m + 1, 0);
    for (std::size_t a = 0; a < m; ++a) start[a + 1] = start[a] + blockSizes[a];
    const std::size_t n = start[m];

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Block-level chain M.
    std::vector<double> M(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        double total = 0.0;
        for (std::size_t b = 0; b < m; ++b) total += M[a * m + b] = 0.1 + unit(rng);
        for (std::size_t b = 0; b < m; ++b) M[a * m + b] /= total;
    }

    // Block (a, b) = M(a, b) * (1 / |B_b| + eps * Z) with Z doubly centred,
    // so its row sums are M(a, b) and its column sums are constant.
    std::vector<Triplet> triplets;
    triplets.reserve(n * n);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            const std::size_t ra = blockSizes[a];
            const std::size_t cb = blockSizes[b];
            std::vector<double> Z(ra * cb);
            for (double& z : Z) z = 2.0 * unit(rng) - 1.0;
            std::vector<double> rowMean(ra, 0.0), colMean(cb, 0.0);
            double mean = 0.0;
            for (std::size_t r = 0; r < ra; ++r)
                for (std::size_t c = 0; c < cb; ++c) {
                    rowMean[r] += Z[r * cb + c] / double(cb);
                    colMean[c] += Z[r * cb + c] / double(ra);
                    mean += Z[r * cb + c] / double(ra * cb);
                }
            double zmax = 0.0;
            for (std::size_t r = 0; r < ra; ++r)
                for (std::size_t c = 0; c < cb; ++c) {
                    double& z = Z[r * cb + c];
                    z = z - rowMean[r] - colMean[c] + mean;
                    zmax = std::max(zmax, std::abs(z));
                }
            const double base = 1.0 / double(cb);
            // a single row or column centres to zero up to rounding
            const double eps = (ra > 1 && cb > 1 && zmax > 1e-12) ? 0.5 * base / zmax : 0.0;
            for (std::size_t r = 0; r < ra; ++r)
                for (std::size_t c = 0; c < cb; ++c)
                    triplets.push_back({start[a] + r, start[b] + c, M[a * m + b] * (base + eps * Z[r * cb + c])});
        }
    }
    CsrMatrix csr = CsrMatrix::from_triplets(n, std::move(triplets));

    // Push rounding into the largest entry of each row so rows sum to 1.
    std::vector<std::size_t> offsets(csr.row_offsets().begin(), csr.row_offsets().end());
    std::vector<std::uint32_t> columns(csr.columns().begin(), csr.columns().end());
    std::vector<double> values(csr.values().begin(), csr.values().end());
    for (std::size_t r = 0; r < n; ++r) {
        double total = 0.0;
        std::size_t big = offsets[r];
        for (std::size_t k = offsets[r]; k < offsets[r + 1]; ++k) {
            total += values[k];
            if (values[k] > values[big]) big = k;
        }
        values[big] += 1.0 - total;
    }

    LumpableChain out{SparseStochasticMatrix(CsrMatrix(n, std::move(offsets), std::move(columns), std::move(values))),
                      Distribution::uniform(n), m, std::vector<std::size_t>(n)};
    Vector p(n);
    double total = 0.0;
    std::vector<double> weight(m);
    for (double& w : weight) total += w = 0.2 + unit(rng);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t r = start[a]; r < start[a + 1]; ++r) {
            p[r] = weight[a] / total / double(blockSizes[a]);
            out.blockOf[r] = a;
        }
    out.initial = Distribution(std::move(p));
    return out;
}

SparseStochasticMatrix random_chain(std::size_t n, std::uint64_t seed, std::size_t maxOut) {
    if (n == 0) throw InvalidInput("random_chain needs at least one state");
    if (maxOut == 0) throw InvalidInput("random_chain needs maxOut >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<std::size_t> fanout(1, std::min(maxOut, n));
    std::vector<Triplet> triplets;
    std::vector<std::size_t> targets;
    std::vector<double> weights;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = fanout(rng);
        targets.assign(1, (i + 1) % n);
        while (targets.size() < k) {
            const std::size_t t = pick(rng);
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        weights.resize(k);
        double total = 0.0;
        for (double& w : weights) total += w = 0.05 + unit(rng);
        double acc = 0.0;
        for (std::size_t t = 0; t + 1 < k; ++t) {
            weights[t] /= total;
            acc += weights[t];
        }
        weights[k - 1] = 1.0 - acc;
        for (std::size_t t = 0; t < k; ++t) triplets.push_back({i, targets[t], weights[t]});
    }
    return SparseStochasticMatrix(CsrMatrix::from_triplets(n, std::move(triplets)));
}

Distribution random_distribution(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw InvalidInput("random_distribution needs at least one state");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector p(n);
    double total = 0.0;
    for (double& v : p) total += v = 0.01 + unit(rng);
    for (double& v : p) v /= total;
    return Distribution(std::move(p));
}

BuiltModel fixture(std::string_view id, std::uint64_t seed) {
    constexpr std::string_view prefix = "fixture:";
    if (id.substr(0, prefix.size()) != prefix) throw InvalidInput("not a fixture: " + std::string(id));
    std::string_view rest = id.substr(prefix.size());
    const auto colon = rest.find(':');
    const std::string_view kind = rest.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : rest.substr(colon + 1);
    const std::string name(id);

    if (kind == "identity") {
        const auto sizes = parse_sizes(arg.empty() ? "4" : arg);
        if (sizes.size() != 1) throw InvalidInput("fixture:identity takes one size");
        return from_chain(name, SparseStochasticMatrix(CsrMatrix::identity(sizes[0])), "identity chain");
    }
    if (kind == "swap") {
        return from_chain(name, SparseStochasticMatrix(CsrMatrix::from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.0}})),
                          "two-state swap chain");
    }
    if (kind == "lumpable") {
        auto chain = lumpable_test_chain(parse_sizes(arg.empty() ? "3,5,4" : arg), seed);
        BuiltModel m = from_chain(name, std::move(chain.chain), "lumpable chain, exact size " +
                                                                    std::to_string(chain.exactSize));
        m.initial = std::move(chain.initial);
        return m;
    }
    if (kind == "random") {
        const auto sizes = parse_sizes(arg.empty() ? "50" : arg);
        if (sizes.size() != 1) throw InvalidInput("fixture:random takes one size");
        return from_chain(name, random_chain(sizes[0], seed), "random sparse chain");
    }
    throw InvalidInput("unknown fixture '" + name + "'");
}

BuiltModel load_model(std::string_view name, const BuiltinOptions& options, std::uint64_t seed) {
    if (name.substr(0, 8) == "fixture:") return fixture(name, seed);
    return builtin(name, options);
}

} // namespace arnagg::models
