#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arnagg/markov.hpp"
#include "arnagg/sparse.hpp"

namespace arnagg::models {

using Population = std::vector<std::uint32_t>;

struct PopulationHash {
    std::size_t operator()(const Population& p) const noexcept;
};

struct Reaction {
    Population input;  ///< consumed molecules per species
    Population output; ///< produced molecules per species
    double rate = 0.0; ///< mass-action constant
};

struct ReactionNetwork {
    std::vector<std::string> species;
    std::vector<Reaction> reactions;
    Population populationCap;

    std::size_t species_count() const noexcept { return species.size(); }
    /// Throws InvalidInput on non-positive rates, wrong vector lengths or a
    /// cap below 1.
    void validate() const;
    /// Builds a reaction from species names; repeated names count twice.
    void add_reaction(const std::vector<std::string>& input, const std::vector<std::string>& output, double rate);
};

/// Reachable states in breadth-first discovery order.
struct StateSpace {
    std::vector<Population> states;
    std::unordered_map<Population, std::size_t, PopulationHash> index;

    std::size_t size() const noexcept { return states.size(); }
    std::optional<std::size_t> find(const Population& p) const;
};

inline constexpr std::size_t kDefaultStateLimit = 1'000'000;

/// rate * prod_s pop_s (pop_s - 1) ... (pop_s - input_s + 1)
double propensity(const Reaction& r, const Population& state);

/// Breadth-first closure of `initial`, successors taken in reaction order.
/// Firings that would push a species above its cap are blocked. Throws
/// StateSpaceOverflow beyond `limit` states.
StateSpace enumerate_state_space(const ReactionNetwork& net, const Population& initial,
                                 std::size_t limit = kDefaultStateLimit);

/// Mass-action generator over `space` with blocked capped firings.
SparseGeneratorMatrix build_generator(const ReactionNetwork& net, const StateSpace& space);

/// Successor relation of an explicitly described CTMC: appends (target, rate)
/// pairs for every transition out of the given state.
using SuccessorFn = std::function<void(const Population&, std::vector<std::pair<Population, double>>&)>;

struct ExploredChain {
    StateSpace space;
    SparseGeneratorMatrix generator;
};

/// Breadth-first exploration of an explicit CTMC from `initial`.
ExploredChain explore(const Population& initial, const SuccessorFn& successors,
                      std::size_t limit = kDefaultStateLimit);

ReactionNetwork lotka_volterra_network(std::uint32_t cap = 100);
/// (cap / 2, cap / 2).
Population lotka_volterra_initial(std::uint32_t cap = 100);
ReactionNetwork gene_expression_network();
Population gene_expression_initial();
/// Two clusters of `workstations` machines joined by switches and a backbone,
/// with a single repair unit. State layout: see workstation_cluster_labels().
ExploredChain workstation_cluster(std::uint32_t workstations = 20);
std::vector<std::string> workstation_cluster_labels();

enum class MatrixKind { Auto, Generator, Stochastic };

struct ModelDescriptor {
    std::string name;
    std::size_t stateCount = 0;
    /// Uniformisation rate actually used (0 for chains ingested as stochastic).
    double uniformisationRate = 0.0;
    /// Rate quoted for the model in the literature, if any.
    std::optional<double> publishedRate;
    double maxExitRate = 0.0;
    std::size_t initialState = 0;
    MatrixKind kind = MatrixKind::Generator;
    std::string description;
};

struct BuiltModel {
    ModelDescriptor descriptor;
    std::optional<SparseGeneratorMatrix> generator;
    SparseStochasticMatrix chain;
    /// Overrides the point mass at descriptor.initialState.
    std::optional<Distribution> initial;

    Distribution initial_distribution() const;
};

/// Names accepted by builtin().
std::vector<std::string> builtin_names();

struct BuiltinOptions {
    /// Population cap for lotka-volterra (100 in the catalog).
    std::optional<std::uint32_t> cap;
    /// Required for rsvp-ingest.
    std::optional<std::filesystem::path> matrixPath;
    MatrixKind kind = MatrixKind::Auto;
};

/// Catalog entry by name: lotka-volterra, workstation-cluster,
/// gene-expression, rsvp-ingest. Throws InvalidInput for unknown names or a
/// missing ingest file.
BuiltModel builtin(std::string_view name, const BuiltinOptions& options = {});

/// Reads a MatrixMarket generator or stochastic matrix. With Auto, rows
/// summing to 0 mean generator and rows summing to 1 mean stochastic.
/// Generators are uniformised at `rate` (default: the usual factor above the
/// largest exit rate).
BuiltModel ingest(const std::filesystem::path& path, MatrixKind kind = MatrixKind::Auto,
                  std::optional<double> rate = std::nullopt, std::string name = "ingested");

/// Uniformises at max(published, largest exit rate).
BuiltModel from_generator(std::string name, SparseGeneratorMatrix Q, std::size_t initialState,
                          std::optional<double> publishedRate, std::string description);

/// Writes <dir>/<name>.mtx (uniformised chain), <dir>/<name>.generator.mtx
/// when a generator exists, and <dir>/<name>.json with the descriptor.
void export_model(const BuiltModel& model, const std::filesystem::path& dir);
std::string descriptor_json(const ModelDescriptor& d);

struct LumpableChain {
    SparseStochasticMatrix chain;
    Distribution initial;
    std::size_t exactSize = 0;           ///< number of blocks
    std::vector<std::size_t> blockOf;    ///< block index per state
};

/// Random chain that is both ordinarily and exactly lumpable for the
/// partition into consecutive blocks of the given sizes; the initial
/// distribution is uniform within each block. The Krylov space of the
/// initial distribution is then invariant at dimension <= blockSizes.size().
LumpableChain lumpable_test_chain(const std::vector<std::size_t>& blockSizes, std::uint64_t seed);

/// Random sparse stochastic matrix with 1..maxOut transitions per row, one
/// of them to the next state (mod n) so the chain is irreducible.
SparseStochasticMatrix random_chain(std::size_t n, std::uint64_t seed, std::size_t maxOut = 4);
/// Random strictly positive distribution.
Distribution random_distribution(std::size_t n, std::uint64_t seed);

/// Small models addressed as "fixture:identity:N", "fixture:swap",
/// "fixture:lumpable:3,5,4" or "fixture:random:N".
BuiltModel fixture(std::string_view id, std::uint64_t seed);

/// builtin() or fixture() depending on the "fixture:" prefix.
BuiltModel load_model(std::string_view name, const BuiltinOptions& options, std::uint64_t seed);

} // namespace arnagg::models
