#include "arnagg/aggregation_io.hpp"

#include <fstream>

#include "json.hpp"

#include "arnagg/error.hpp"
#include "arnagg/matrix_market.hpp"

namespace arnagg::io {

namespace {

constexpr const char* kFormat = "arnagg-aggregation";
constexpr int kVersion = 1;

} // namespace

void write_aggregation(const std::filesystem::path& dir, const ArnoldiAggregation& agg) {
    std::filesystem::create_directories(dir);
    write_matrix_market_dense(dir / "H.mtx", agg.hessenberg());
    write_matrix_market_dense(dir / "Q.mtx", agg.basis());
    write_vector(dir / "pi0.txt", agg.triple.initial);
    if (!agg.invariant && !agg.boundaryVector.empty()) write_vector(dir / "q_next.txt", agg.boundaryVector);
    else std::filesystem::remove(dir / "q_next.txt");

    nlohmann::ordered_json meta;
    meta["format"] = kFormat;
    meta["version"] = kVersion;
    meta["dimension"] = agg.dimension();
    meta["stateCount"] = agg.state_count();
    meta["sourceNorm"] = agg.sourceNorm;
    meta["boundaryCoefficient"] = agg.boundaryCoefficient;
    meta["invariant"] = agg.invariant;
    meta["residualNorm1"] = agg.residualNorm1;
    meta["residualNorm2"] = agg.residualNorm2;
    meta["residualRowSums"] = agg.residualRowSums;
    std::ofstream f(dir / "meta.json");
    if (!f) throw IoError("cannot write " + (dir / "meta.json").string());
    f << meta.dump(2) << '\n';
}

ArnoldiAggregation read_aggregation(const std::filesystem::path& dir) {
    std::ifstream f(dir / "meta.json");
    if (!f) throw IoError("missing " + (dir / "meta.json").string());
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed meta.json: " + std::string(e.what()));
    }

    ArnoldiAggregation agg;
    try {
        if (meta.value("format", std::string()) != kFormat) throw IoError("meta.json: not an aggregation directory");
        const std::size_t dimension = meta.at("dimension").get<std::size_t>();
        agg.sourceNorm = meta.at("sourceNorm").get<double>();
        agg.boundaryCoefficient = meta.at("boundaryCoefficient").get<double>();
        agg.invariant = meta.at("invariant").get<bool>();
        agg.residualNorm1 = meta.value("residualNorm1", 0.0);
        agg.residualNorm2 = meta.value("residualNorm2", 0.0);
        if (meta.contains("residualRowSums")) agg.residualRowSums = meta["residualRowSums"].get<Vector>();

        agg.triple.step = read_matrix_market_dense(dir / "H.mtx");
        agg.triple.disaggregation = read_matrix_market_dense(dir / "Q.mtx");
        agg.triple.initial = read_vector(dir / "pi0.txt");
        if (!agg.invariant) agg.boundaryVector = read_vector(dir / "q_next.txt");

        if (agg.dimension() != dimension) throw IoError("meta.json dimension disagrees with H.mtx");
        agg.triple.validate();
        if (!agg.invariant && agg.boundaryVector.size() != agg.state_count())
            throw IoError("q_next.txt length disagrees with Q.mtx");
        if (!agg.residualRowSums.empty() && agg.residualRowSums.size() != dimension)
            throw IoError("meta.json residualRowSums length disagrees with the dimension");
    } catch (const nlohmann::json::exception& e) {
        throw IoError("meta.json: " + std::string(e.what()));
    } catch (const InvalidInput& e) {
        throw IoError("inconsistent aggregation directory: " + std::string(e.what()));
    } catch (const DimensionMismatch& e) {
        throw IoError("inconsistent aggregation directory: " + std::string(e.what()));
    }
    return agg;
}

} // namespace arnagg::io
