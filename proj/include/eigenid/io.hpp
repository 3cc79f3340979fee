#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "eigenid/matrix.hpp"

namespace eigenid {

// One stored entry of a matrix file: 1-based indices, lower triangle only.
struct MatrixEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    double re = 0.0;
    double im = 0.0;
};

struct MatrixFileRecord {
    std::size_t order = 0;
    std::vector<MatrixEntry> entries;
};

// Materialize a record: unlisted lower-triangle entries are zero, the upper
// triangle is filled by conjugation. Diagonal entries with a nonzero
// imaginary part surface as NotHermitian through the strict constructor.
inline HermitianMatrix read_matrix(const MatrixFileRecord& rec) {
    if (rec.order == 0) fail(errc::bad_shape, "matrix order must be positive");
    Matrix m(rec.order, rec.order);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const MatrixEntry& e : rec.entries) {
        if (e.row < 1 || e.row > rec.order || e.col < 1 || e.col > rec.order)
            fail(errc::index_out_of_range, "entry (" + std::to_string(e.row) + "," +
                                               std::to_string(e.col) + ") outside order " +
                                               std::to_string(rec.order));
        if (e.row < e.col)
            fail(errc::upper_triangle_entry, "entry (" + std::to_string(e.row) + "," +
                                                 std::to_string(e.col) + ") lies above the diagonal");
        if (!seen.insert({e.row, e.col}).second)
            fail(errc::duplicate_entry, "entry (" + std::to_string(e.row) + "," +
                                            std::to_string(e.col) + ") listed twice");
        const std::size_t r = e.row - 1, c = e.col - 1;
        m(r, c) = cplx(e.re, e.im);
        if (r != c) m(c, r) = std::conj(cplx(e.re, e.im));
    }
    return HermitianMatrix::from_entries(m, SymmetryMode::strict);
}

// Canonical record: nonzero lower-triangle entries sorted by row, then column.
inline MatrixFileRecord write_matrix(const HermitianMatrix& a) {
    MatrixFileRecord rec;
    rec.order = a.order();
    for (std::size_t r = 0; r < a.order(); ++r)
        for (std::size_t c = 0; c <= r; ++c) {
            const cplx v = a(r, c);
            if (v.real() == 0.0 && v.imag() == 0.0) continue;
            rec.entries.push_back({r + 1, c + 1, v.real(), v.imag()});
        }
    return rec;
}

inline MatrixFileRecord parse_matrix_file(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail(errc::parse_error, "empty matrix file");
    std::istringstream head(line);
    std::string magic, kind;
    long long order = 0;
    if (!(head >> magic >> kind >> order) || magic != "%%eigenid" || kind != "hermitian" ||
        order < 1)
        fail(errc::parse_error, "bad header line, expected '%%eigenid hermitian <order>'");

    MatrixFileRecord rec;
    rec.order = static_cast<std::size_t>(order);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;                 // blank line
        if (first.size() && first[0] == '%') continue;  // comment
        long long r = 0, c = 0;
        double re = 0.0, im = 0.0;
        std::istringstream es(line);
        std::string extra;
        if (!(es >> r >> c >> re >> im) || (es >> extra) || r < 1 || c < 1)
            fail(errc::parse_error, "malformed entry at line " + std::to_string(lineno));
        rec.entries.push_back(
            {static_cast<std::size_t>(r), static_cast<std::size_t>(c), re, im});
    }
    return rec;
}

inline void format_matrix_file(const MatrixFileRecord& rec, std::ostream& out) {
    out << "%%eigenid hermitian " << rec.order << "\n";
    for (const MatrixEntry& e : rec.entries)
        out << e.row << " " << e.col << " " << fmt_double(e.re) << " " << fmt_double(e.im)
            << "\n";
}

inline HermitianMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io_error, "cannot open '" + path + "'");
    MatrixFileRecord rec = parse_matrix_file(in);
    return read_matrix(rec);
}

inline void save_matrix_file(const HermitianMatrix& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(errc::io_error, "cannot write '" + path + "'");
    format_matrix_file(write_matrix(a), out);
    if (!out.flush()) fail(errc::io_error, "write to '" + path + "' failed");
}

}  // namespace eigenid
