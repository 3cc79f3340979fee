#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace eigenid {

using cplx = std::complex<double>;

// Failure categories raised by the library. The CLI maps these onto its
// exit-status contract (usage/input problems vs. failed mathematical checks).
enum class errc {
    bad_shape,
    not_hermitian,
    index_out_of_range,
    too_small,
    bad_spectrum_length,
    duplicate_entry,
    upper_triangle_entry,
    parse_error,
    io_error,
    usage_error,
    no_convergence,
    dimension_mismatch,
    degenerate_spectrum,
    empty_spectrum,
    length_mismatch,
    not_shifted,
    degenerate_kernel,
    not_unitary,
    normalization_violated,
    reconstruction_defect,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::bad_shape: return "BadShape";
        case errc::not_hermitian: return "NotHermitian";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::too_small: return "TooSmall";
        case errc::bad_spectrum_length: return "BadSpectrumLength";
        case errc::duplicate_entry: return "DuplicateEntry";
        case errc::upper_triangle_entry: return "UpperTriangleEntry";
        case errc::parse_error: return "ParseError";
        case errc::io_error: return "IoError";
        case errc::usage_error: return "UsageError";
        case errc::no_convergence: return "NoConvergence";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::degenerate_spectrum: return "DegenerateSpectrum";
        case errc::empty_spectrum: return "EmptySpectrum";
        case errc::length_mismatch: return "LengthMismatch";
        case errc::not_shifted: return "NotShifted";
        case errc::degenerate_kernel: return "DegenerateKernel";
        case errc::not_unitary: return "NotUnitary";
        case errc::normalization_violated: return "NormalizationViolated";
        case errc::reconstruction_defect: return "ReconstructionDefect";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& detail) { throw Error(code, detail); }

// Dense row-major complex matrix. Plain value type; all algorithms in this
// library treat matrices as immutable inputs and fresh outputs.
class Matrix {
  public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<cplx>> grid) {
        rows_ = grid.size();
        cols_ = rows_ ? grid.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : grid) {
            if (row.size() != cols_) fail(errc::bad_shape, "ragged initializer grid");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

inline Matrix identity_matrix(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

inline Matrix adjoint(const Matrix& a) {
    Matrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) fail(errc::dimension_mismatch, "matrix product shape mismatch");
    Matrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(errc::dimension_mismatch, "matrix sum shape mismatch");
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(errc::dimension_mismatch, "matrix difference shape mismatch");
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

inline double max_abs(const Matrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

// max |U*U - I|, the entrywise orthonormality defect.
inline double unitarity_defect(const Matrix& u) {
    return max_abs_diff(adjoint(u) * u, identity_matrix(u.cols()));
}

// Scale-aware gap between two real quantities; always lands in [0, 1).
inline double normalized_gap(double lhs, double rhs) {
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
}

// Product with factors taken in ascending-magnitude order. Signs and exact
// zeros are preserved; no log-space transform.
inline double ordered_product(std::vector<double> factors) {
    std::sort(factors.begin(), factors.end(),
              [](double a, double b) { return std::abs(a) < std::abs(b); });
    double p = 1.0;
    for (double f : factors) p *= f;
    return p;
}

// Shortest decimal form that parses back to the same double. Used for matrix
// files (lossless round-trip) and for deterministic report output.
inline std::string fmt_double(double x) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

}  // namespace eigenid
