#include "arnagg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace arnagg::io {

namespace {

struct Header {
    bool coordinate = true;
    std::string field = "real";
    std::string symmetry = "general";
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

Header read_header(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("MatrixMarket: empty input");
    std::istringstream ss(line);
    std::string banner, object, format, field, symmetry;
    ss >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix")
        throw IoError("MatrixMarket: missing '%%MatrixMarket matrix' banner");
    Header h;
    format = lower(format);
    if (format == "coordinate") {
        h.coordinate = true;
    } else if (format == "array") {
        h.coordinate = false;
    } else {
        throw IoError("MatrixMarket: unsupported format '" + format + "'");
    }
    h.field = lower(field);
    if (h.field != "real" && h.field != "integer" && h.field != "double" && h.field != "pattern")
        throw IoError("MatrixMarket: unsupported field '" + field + "'");
    h.symmetry = lower(symmetry);
    if (h.symmetry != "general" && h.symmetry != "symmetric")
        throw IoError("MatrixMarket: unsupported symmetry '" + symmetry + "'");
    if (!h.coordinate && h.field == "pattern") throw IoError("MatrixMarket: pattern arrays are invalid");
    return h;
}

/// Next non-comment, non-blank line.
bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        return true;
    }
    return false;
}

/// One 1-based coordinate entry, returned 0-based.
Triplet read_coordinate_entry(std::istream& in, const Header& h, std::size_t rows, std::size_t cols) {
    std::string line;
    if (!next_data_line(in, line)) throw IoError("MatrixMarket: fewer entries than declared");
    std::istringstream ss(line);
    std::size_t r = 0, c = 0;
    double v = 1.0;
    if (!(ss >> r >> c)) throw IoError("MatrixMarket: malformed entry line");
    if (h.field != "pattern" && !(ss >> v)) throw IoError("MatrixMarket: missing value");
    if (r < 1 || c < 1 || r > rows || c > cols) throw IoError("MatrixMarket: index out of range");
    return {r - 1, c - 1, v};
}

DenseMatrix read_array_body(std::istream& in, const Header& h) {
    std::string line;
    if (!next_data_line(in, line)) throw IoError("MatrixMarket: missing size line");
    std::size_t rows = 0, cols = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> rows >> cols)) throw IoError("MatrixMarket: malformed size line");
    }
    const bool symmetric = h.symmetry == "symmetric";
    if (symmetric && rows != cols) throw IoError("MatrixMarket: symmetric array must be square");
    DenseMatrix d(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = symmetric ? c : 0; r < rows; ++r) {
            if (!next_data_line(in, line)) throw IoError("MatrixMarket: fewer array values than declared");
            std::istringstream ss(line);
            double v = 0.0;
            if (!(ss >> v)) throw IoError("MatrixMarket: malformed array value");
            d(r, c) = v;
            if (symmetric) d(c, r) = v;
        }
    }
    return d;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path.string());
    return f;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path.string());
    return f;
}

} // namespace

CsrMatrix read_matrix_market(std::istream& in) {
    const Header h = read_header(in);
    if (!h.coordinate) return CsrMatrix::from_dense(read_array_body(in, h));
    std::string line;
    if (!next_data_line(in, line)) throw IoError("MatrixMarket: missing size line");
    std::size_t rows = 0, cols = 0, entries = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> rows >> cols >> entries)) throw IoError("MatrixMarket: malformed size line");
    }
    if (rows != cols) throw IoError("MatrixMarket: matrix is not square");
    std::vector<Triplet> t;
    t.reserve(h.symmetry == "symmetric" ? 2 * entries : entries);
    for (std::size_t e = 0; e < entries; ++e) {
        const auto [r, c, v] = read_coordinate_entry(in, h, rows, cols);
        t.push_back({r, c, v});
        if (h.symmetry == "symmetric" && r != c) t.push_back({c, r, v});
    }
    return CsrMatrix::from_triplets(rows, std::move(t));
}

CsrMatrix read_matrix_market(const std::filesystem::path& path) {
    auto f = open_in(path);
    return read_matrix_market(f);
}

void write_matrix_market(std::ostream& out, const CsrMatrix& m) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.size() << ' ' << m.size() << ' ' << m.nonzeros() << '\n';
    for (std::size_t r = 0; r < m.size(); ++r) {
        const auto cols = m.row_columns(r);
        const auto vals = m.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            out << (r + 1) << ' ' << (cols[k] + 1) << ' ';
            write_double(out, vals[k]);
            out << '\n';
        }
    }
}

void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& m) {
    auto f = open_out(path);
    write_matrix_market(f, m);
}

DenseMatrix read_matrix_market_dense(std::istream& in) {
    const Header h = read_header(in);
    if (!h.coordinate) return read_array_body(in, h);
    std::string line;
    if (!next_data_line(in, line)) throw IoError("MatrixMarket: missing size line");
    std::size_t rows = 0, cols = 0, entries = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> rows >> cols >> entries)) throw IoError("MatrixMarket: malformed size line");
    }
    DenseMatrix d(rows, cols);
    for (std::size_t e = 0; e < entries; ++e) {
        const auto [r, c, v] = read_coordinate_entry(in, h, rows, cols);
        d(r, c) += v;
        if (h.symmetry == "symmetric" && r != c) d(c, r) += v;
    }
    return d;
}

DenseMatrix read_matrix_market_dense(const std::filesystem::path& path) {
    auto f = open_in(path);
    return read_matrix_market_dense(f);
}

void write_matrix_market_dense(std::ostream& out, const DenseMatrix& m) {
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            write_double(out, m(r, c));
            out << '\n';
        }
    }
}

void write_matrix_market_dense(const std::filesystem::path& path, const DenseMatrix& m) {
    auto f = open_out(path);
    write_matrix_market_dense(f, m);
}

Vector read_vector(std::istream& in) {
    Vector v;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
        std::istringstream ss(line);
        double x = 0.0;
        if (!(ss >> x)) throw IoError("vector file: malformed value '" + line + "'");
        v.push_back(x);
    }
    return v;
}

Vector read_vector(const std::filesystem::path& path) {
    auto f = open_in(path);
    return read_vector(f);
}

void write_vector(std::ostream& out, std::span<const double> v) {
    for (double x : v) {
        write_double(out, x);
        out << '\n';
    }
}

void write_vector(const std::filesystem::path& path, std::span<const double> v) {
    auto f = open_out(path);
    write_vector(f, v);
}

void write_double(std::ostream& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
}

} // namespace arnagg::io
