#pragma once

#include <filesystem>

#include "arnagg/arnoldi.hpp"

namespace arnagg::io {

/// Writes H.mtx, Q.mtx (dense MatrixMarket), pi0.txt, meta.json and, unless
/// the aggregation is invariant, q_next.txt into `dir` (created if needed).
void write_aggregation(const std::filesystem::path& dir, const ArnoldiAggregation& agg);

/// Reads a directory written by write_aggregation. Throws IoError on missing
/// or inconsistent files.
ArnoldiAggregation read_aggregation(const std::filesystem::path& dir);

} // namespace arnagg::io
