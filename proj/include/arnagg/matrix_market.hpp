#pragma once

#include <filesystem>
#include <iosfwd>

#include "arnagg/linalg.hpp"
#include "arnagg/sparse.hpp"

namespace arnagg::io {

/// Reads a square "%%MatrixMarket matrix coordinate real general" file
/// (1-based indices). Also accepts "integer" and "pattern" fields and the
/// "symmetric" qualifier, which are expanded.
CsrMatrix read_matrix_market(std::istream& in);
CsrMatrix read_matrix_market(const std::filesystem::path& path);

void write_matrix_market(std::ostream& out, const CsrMatrix& m);
void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& m);

/// Dense "%%MatrixMarket matrix array real general" (column-major body).
DenseMatrix read_matrix_market_dense(std::istream& in);
DenseMatrix read_matrix_market_dense(const std::filesystem::path& path);

void write_matrix_market_dense(std::ostream& out, const DenseMatrix& m);
void write_matrix_market_dense(const std::filesystem::path& path, const DenseMatrix& m);

/// Plain text vector, one value per line. Blank lines and '#' or '%' comments
/// are skipped.
Vector read_vector(std::istream& in);
Vector read_vector(const std::filesystem::path& path);

void write_vector(std::ostream& out, std::span<const double> v);
void write_vector(const std::filesystem::path& path, std::span<const double> v);

/// Shortest text that round-trips to the same double ("nan", "inf" for
/// non-finite values).
void write_double(std::ostream& out, double v);

} // namespace arnagg::io
