#pragma once

#include <cstdint>
#include <random>

#include "eigenid/matrix.hpp"

namespace eigenid {

enum class Ensemble { real_symmetric, complex_hermitian, prescribed_spectrum };

namespace detail {

inline Matrix gaussian_matrix(std::size_t n, std::mt19937_64& gen, bool complex_entries) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = nd(gen);
            const double im = complex_entries ? nd(gen) : 0.0;
            g(i, j) = cplx(re, im);
        }
    return g;
}

}  // namespace detail

// Seeded Haar-like unitary: orthonormalize a complex Gaussian matrix by
// modified Gram-Schmidt with one re-orthogonalization pass per column.
inline Matrix random_unitary(std::size_t n, std::uint64_t seed) {
    if (n == 0) fail(errc::bad_shape, "unitary order must be positive");
    std::mt19937_64 gen(seed);
    Matrix u = detail::gaussian_matrix(n, gen, true);
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj = 0.0;
                for (std::size_t r = 0; r < n; ++r) proj += std::conj(u(r, k)) * u(r, j);
                for (std::size_t r = 0; r < n; ++r) u(r, j) -= proj * u(r, k);
            }
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm += std::norm(u(r, j));
        norm = std::sqrt(norm);
        if (norm < 1e-12) fail(errc::bad_shape, "rank-deficient Gaussian draw");
        for (std::size_t r = 0; r < n; ++r) u(r, j) /= norm;
    }
    return u;
}

inline HermitianMatrix random_real_symmetric(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Matrix g = detail::gaussian_matrix(n, gen, false);
    return HermitianMatrix::from_entries(g, SymmetryMode::symmetrize);
}

inline HermitianMatrix random_complex_hermitian(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Matrix g = detail::gaussian_matrix(n, gen, true);
    return HermitianMatrix::from_entries(g, SymmetryMode::symmetrize);
}

// Q diag(spectrum) Q* for a seeded random unitary Q: the exact spectrum is
// known ahead of any eigensolve.
inline HermitianMatrix random_prescribed(const std::vector<double>& spectrum,
                                         std::uint64_t seed) {
    const std::size_t n = spectrum.size();
    if (n == 0) fail(errc::bad_spectrum_length, "prescribed spectrum is empty");
    Matrix q = random_unitary(n, seed);
    Matrix scaled = q;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= spectrum[c];
    return HermitianMatrix::from_entries(scaled * adjoint(q), SymmetryMode::symmetrize);
}

inline HermitianMatrix random_hermitian(std::size_t n, std::uint64_t seed, Ensemble ensemble,
                                        const std::vector<double>& spectrum = {}) {
    if (n == 0) fail(errc::bad_shape, "matrix order must be positive");
    switch (ensemble) {
        case Ensemble::real_symmetric: return random_real_symmetric(n, seed);
        case Ensemble::complex_hermitian: return random_complex_hermitian(n, seed);
        case Ensemble::prescribed_spectrum:
            if (spectrum.size() != n)
                fail(errc::bad_spectrum_length,
                     "spectrum length " + std::to_string(spectrum.size()) +
                         " does not match order " + std::to_string(n));
            return random_prescribed(spectrum, seed);
    }
    fail(errc::usage_error, "unknown ensemble");
}

}  // namespace eigenid
