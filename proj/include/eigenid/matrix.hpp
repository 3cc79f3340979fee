#pragma once

#include <utility>

#include "eigenid/core.hpp"

namespace eigenid {

enum class SymmetryMode { strict, symmetrize };

// Dense Hermitian matrix. The stored grid satisfies entries(i,j) == conj(entries(j,i))
// exactly and has a real diagonal; construction either verifies the input against
// a relative tolerance (strict) or projects onto the Hermitian part (symmetrize).
class HermitianMatrix {
  public:
    static constexpr double kStrictTol = 1e-12;

    static HermitianMatrix from_entries(const Matrix& entries, SymmetryMode mode) {
        if (entries.rows() == 0 || entries.rows() != entries.cols())
            fail(errc::bad_shape, "Hermitian matrix requires a non-empty square grid");
        const std::size_t n = entries.rows();
        if (mode == SymmetryMode::strict) {
            double defect = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    defect = std::max(defect, std::abs(entries(i, j) - std::conj(entries(j, i))));
            const double bound = kStrictTol * (1.0 + max_abs(entries));
            if (defect > bound)
                fail(errc::not_hermitian, "asymmetry " + fmt_double(defect) +
                                              " exceeds tolerance " + fmt_double(bound));
        }
        // Both modes store the exact Hermitian part so the invariant holds by
        // construction; under strict mode the projection is within kStrictTol
        // of the input.
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = cplx(entries(i, i).real(), 0.0);
            for (std::size_t j = i + 1; j < n; ++j) {
                const cplx v = 0.5 * (entries(i, j) + std::conj(entries(j, i)));
                m(i, j) = v;
                m(j, i) = std::conj(v);
            }
        }
        return HermitianMatrix(std::move(m));
    }

    std::size_t order() const noexcept { return m_.rows(); }
    const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const Matrix& mat() const noexcept { return m_; }

  private:
    explicit HermitianMatrix(Matrix m) : m_(std::move(m)) {}
    friend HermitianMatrix hermitian_from_parts(Matrix m);

    Matrix m_;
};

// Internal shortcut for routines that build a grid already known to be
// Hermitian (minor extraction, shifts, file reads after conjugate fill).
inline HermitianMatrix hermitian_from_parts(Matrix m) { return HermitianMatrix(std::move(m)); }

inline HermitianMatrix hermitian_diagonal(const std::vector<double>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return HermitianMatrix::from_entries(m, SymmetryMode::strict);
}

// Principal minor: delete row j and column j (0-based).
inline HermitianMatrix principal_minor(const HermitianMatrix& a, std::size_t j) {
    const std::size_t n = a.order();
    if (n < 2) fail(errc::too_small, "principal minor of a 1x1 matrix");
    if (j >= n) fail(errc::index_out_of_range, "minor index " + std::to_string(j));
    Matrix m(n - 1, n - 1);
    for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
            if (c == j) continue;
            m(mr, mc) = a(r, c);
            ++mc;
        }
        ++mr;
    }
    return hermitian_from_parts(std::move(m));
}

// A - s*I. Off-diagonal entries are untouched; the spectrum translates by -s.
inline HermitianMatrix shift(const HermitianMatrix& a, double s) {
    Matrix m = a.mat();
    for (std::size_t i = 0; i < a.order(); ++i) m(i, i) = cplx(m(i, i).real() - s, 0.0);
    return hermitian_from_parts(std::move(m));
}

// Corner split of a square grid into its leading block, last column, last row
// and (n,n) entry. Reassembly is the exact inverse.
struct BlockPartition {
    Matrix top_left;                    // (n-1) x (n-1)
    std::vector<cplx> top_right_col;    // column n restricted to rows 1..n-1
    std::vector<cplx> bottom_left_row;  // row n restricted to columns 1..n-1
    cplx corner;
};

inline BlockPartition corner_partition(const Matrix& m) {
    if (m.rows() != m.cols()) fail(errc::bad_shape, "corner partition of a non-square grid");
    const std::size_t n = m.rows();
    if (n < 2) fail(errc::too_small, "corner partition requires order >= 2");
    BlockPartition b;
    b.top_left = Matrix(n - 1, n - 1);
    b.top_right_col.resize(n - 1);
    b.bottom_left_row.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j + 1 < n; ++j) b.top_left(i, j) = m(i, j);
        b.top_right_col[i] = m(i, n - 1);
        b.bottom_left_row[i] = m(n - 1, i);
    }
    b.corner = m(n - 1, n - 1);
    return b;
}

inline Matrix reassemble(const BlockPartition& b) {
    const std::size_t n = b.top_left.rows() + 1;
    Matrix m(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j + 1 < n; ++j) m(i, j) = b.top_left(i, j);
        m(i, n - 1) = b.top_right_col[i];
        m(n - 1, i) = b.bottom_left_row[i];
    }
    m(n - 1, n - 1) = b.corner;
    return m;
}

}  // namespace eigenid
