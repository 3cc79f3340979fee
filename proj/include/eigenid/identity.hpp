#pragma once

#include "eigenid/eigen.hpp"

namespace eigenid {

// The n eigenvalue sequences of the principal minors M_j, each ascending of
// length n-1; spectra[j] belongs to the minor that deletes row/column j.
struct MinorSpectra {
    std::size_t order = 0;
    std::vector<std::vector<double>> spectra;
};

inline MinorSpectra minor_spectra(const HermitianMatrix& a) {
    const std::size_t n = a.order();
    if (n < 2) fail(errc::too_small, "minor spectra require order >= 2");
    MinorSpectra ms;
    ms.order = n;
    ms.spectra.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        try {
            ms.spectra[j] = spectrum(principal_minor(a, j));
        } catch (const Error& e) {
            if (e.code() == errc::no_convergence)
                fail(errc::no_convergence, "minor " + std::to_string(j + 1) + ": " + e.what());
            throw;
        }
    }
    return ms;
}

// mags[i][j] = |component j of the eigenvector for eigenvalues[i]|^2, i.e.
// the squared modulus of entry (j, i) of the eigenvector matrix.
inline std::vector<std::vector<double>> squared_magnitudes(const Matrix& vectors) {
    const std::size_t n = vectors.rows();
    std::vector<std::vector<double>> mags(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mags[i][j] = std::norm(vectors(j, i));
    return mags;
}

// Both sides of the identity at cell (i, j), 0-based:
//   lhs = |v_{i,j}|^2 * prod_{k != i} (lam_i - lam_k)
//   rhs = prod_k (lam_i - mu_k)  over the spectrum mu of minor j.
inline std::pair<double, double> identity_sides(const std::vector<double>& lam,
                                                const MinorSpectra& minors,
                                                const std::vector<std::vector<double>>& mags,
                                                std::size_t i, std::size_t j) {
    const std::size_t n = lam.size();
    if (minors.order != n || mags.size() != n)
        fail(errc::dimension_mismatch, "spectrum, minors and magnitudes disagree on order");
    if (i >= n || j >= n) fail(errc::index_out_of_range, "identity cell outside the grid");
    std::vector<double> lf;
    lf.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k)
        if (k != i) lf.push_back(lam[i] - lam[k]);
    const double lhs = mags[i][j] * ordered_product(std::move(lf));

    std::vector<double> rf;
    rf.reserve(n - 1);
    for (double mu : minors.spectra[j]) rf.push_back(lam[i] - mu);
    const double rhs = ordered_product(std::move(rf));
    return {lhs, rhs};
}

struct IdentityCell {
    std::size_t i = 0, j = 0;  // 0-based
    double lhs = 0.0, rhs = 0.0;
    double abs_gap = 0.0, norm_gap = 0.0;
};

struct IdentityReport {
    std::size_t order = 0;
    double tol = 0.0;
    std::vector<IdentityCell> cells;  // row-major over (i, j)
    double max_norm_gap = 0.0;
    std::size_t worst = 0;  // index into cells
    bool pass = false;
};

// Evaluate every cell of the identity from one decomposition of A and the n
// independently computed minor spectra.
inline IdentityReport verify_identity(const HermitianMatrix& a, double tol = 1e-8) {
    const std::size_t n = a.order();
    if (n < 2) fail(errc::too_small, "identity verification requires order >= 2");
    const EigenDecomposition d = eigh(a);
    const MinorSpectra minors = minor_spectra(a);
    const auto mags = squared_magnitudes(d.vectors);

    IdentityReport rep;
    rep.order = n;
    rep.tol = tol;
    rep.cells.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto [lhs, rhs] = identity_sides(d.eigenvalues, minors, mags, i, j);
            IdentityCell cell{i, j, lhs, rhs, std::abs(lhs - rhs), normalized_gap(lhs, rhs)};
            if (rep.cells.empty() || cell.norm_gap > rep.max_norm_gap) {
                rep.max_norm_gap = cell.norm_gap;
                rep.worst = rep.cells.size();
            }
            rep.cells.push_back(cell);
        }
    rep.pass = rep.max_norm_gap <= tol;
    return rep;
}

struct SpectralGapInfo {
    double min_gap = 0.0;  // smallest |lam_i - lam_k| over i != k
    double range = 0.0;    // lam_max - lam_min
    bool simple = false;   // min_gap > gap_tol * (1 + range)
};

inline SpectralGapInfo gap_analysis(const std::vector<double>& lam, double gap_tol) {
    if (lam.empty()) fail(errc::empty_spectrum, "gap analysis of an empty spectrum");
    SpectralGapInfo info;
    info.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < lam.size(); ++k)
        info.min_gap = std::min(info.min_gap, lam[k + 1] - lam[k]);
    info.range = lam.back() - lam.front();
    info.simple = info.min_gap > gap_tol * (1.0 + info.range);
    return info;
}

// Nonnegative grid of reconstructed |v_{i,j}|^2; doubly stochastic within
// 1e-8 * order when built by reconstruct_magnitudes.
struct MagnitudeMatrix {
    std::size_t order = 0;
    std::vector<std::vector<double>> values;
};

// Invert the identity for |v_{i,j}|^2 from spectra alone. Requires a simple
// spectrum: near a degeneracy both sides vanish and carry no per-entry
// information, so the call is rejected instead of regularized.
inline MagnitudeMatrix reconstruct_magnitudes(const std::vector<double>& lam,
                                              const MinorSpectra& minors,
                                              double gap_tol = 1e-8) {
    const std::size_t n = lam.size();
    if (n < 2) fail(errc::too_small, "reconstruction requires order >= 2");
    if (minors.order != n)
        fail(errc::dimension_mismatch, "minor spectra order does not match spectrum");
    const SpectralGapInfo gaps = gap_analysis(lam, gap_tol);
    if (!gaps.simple)
        fail(errc::degenerate_spectrum,
             "min eigenvalue gap " + fmt_double(gaps.min_gap) + " at or below threshold " +
                 fmt_double(gap_tol * (1.0 + gaps.range)));

    constexpr double clamp = 1e-12;
    MagnitudeMatrix mm;
    mm.order = n;
    mm.values.assign(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> df;
        df.reserve(n - 1);
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) df.push_back(lam[i] - lam[k]);
        const double denom = ordered_product(std::move(df));
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> nf;
            nf.reserve(n - 1);
            for (double mu : minors.spectra[j]) nf.push_back(lam[i] - mu);
            double entry = ordered_product(std::move(nf)) / denom;
            if (entry < -clamp || entry > 1.0 + clamp)
                fail(errc::reconstruction_defect,
                     "cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") reconstructed as " + fmt_double(entry));
            mm.values[i][j] = entry < 0.0 ? 0.0 : entry;
        }
    }

    const double sum_tol = 1e-8 * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            row += mm.values[i][j];
            col += mm.values[j][i];
        }
        if (std::abs(row - 1.0) > sum_tol || std::abs(col - 1.0) > sum_tol)
            fail(errc::reconstruction_defect,
                 "line " + std::to_string(i + 1) + " sums (" + fmt_double(row) + ", " +
                     fmt_double(col) + ") break double stochasticity");
    }
    return mm;
}

struct InterlacingResult {
    bool pass = true;
    std::size_t violation_k = 0;  // 0-based position of the first violation
    bool upper = false;           // true: mu_k > lam_{k+1}+slack, false: mu_k < lam_k-slack
};

// Cauchy interlacing: lam_k - slack <= mu_k <= lam_{k+1} + slack for each k.
inline InterlacingResult interlacing_check(const std::vector<double>& lam,
                                           const std::vector<double>& minor,
                                           double slack = 1e-10) {
    if (minor.size() + 1 != lam.size())
        fail(errc::length_mismatch, "minor spectrum must be one shorter than the full one");
    InterlacingResult res;
    for (std::size_t k = 0; k < minor.size(); ++k) {
        if (minor[k] < lam[k] - slack) {
            res.pass = false;
            res.violation_k = k;
            res.upper = false;
            return res;
        }
        if (minor[k] > lam[k + 1] + slack) {
            res.pass = false;
            res.violation_k = k;
            res.upper = true;
            return res;
        }
    }
    return res;
}

}  // namespace eigenid
