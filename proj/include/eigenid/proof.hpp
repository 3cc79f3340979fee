#pragma once

#include "eigenid/identity.hpp"

namespace eigenid {

// Determinant by elimination with partial pivoting; deliberately shares no
// machinery with the eigensolver so determinant-vs-spectrum checks compare
// genuinely independent routes. Returns 0 when a pivot underflows 1e-300.
inline cplx determinant(Matrix m) {
    if (m.rows() != m.cols()) fail(errc::bad_shape, "determinant of a non-square grid");
    const std::size_t n = m.rows();
    if (n == 0) return cplx(1.0);
    double sign = 1.0;
    cplx det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(m(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double v = std::abs(m(r, k));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < 1e-300) return cplx(0.0);
        if (piv != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(m(k, c), m(piv, c));
            sign = -sign;
        }
        det *= m(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const cplx f = m(r, k) / m(k, k);
            if (f == cplx(0.0)) continue;
            for (std::size_t c = k; c < n; ++c) m(r, c) -= f * m(k, c);
        }
    }
    return sign * det;
}

// Translate the i-th ascending eigenvalue to zero (0-based i).
inline HermitianMatrix reduce_to_zero(const HermitianMatrix& a, std::size_t i) {
    const std::vector<double> lam = spectrum(a);
    if (i >= lam.size()) fail(errc::index_out_of_range, "eigenvalue index " + std::to_string(i));
    return shift(a, lam[i]);
}

struct ProofStep {
    std::string name;
    double defect = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ProofTrace {
    std::vector<ProofStep> steps;
    bool pass = false;
    double shifted_eigenvalue = 0.0;  // the eigenvalue that was moved to zero
    std::size_t index = 0;            // its ascending position, 0-based
};

namespace detail {

inline ProofStep make_step(std::string name, double defect, double tolerance) {
    const bool ok = defect <= tolerance;
    return ProofStep{std::move(name), defect, tolerance, ok};
}

// Shared setup for the corner checks: locate the (simple) zero eigenvalue,
// then rebuild the eigensystem with that column moved to the last position so
// the diagonal factor ends in 0 and the corner entry is a component of the
// kernel vector.
struct ZeroSetup {
    EigenDecomposition decomp;
    std::size_t zero_index = 0;        // ascending position of the zero eigenvalue
    std::vector<double> lambda_n;      // the n-1 nonzero eigenvalues, order preserved
    Matrix u;                          // eigenvector matrix, zero column last
};

inline ZeroSetup zero_eigen_setup(const HermitianMatrix& a) {
    const std::size_t n = a.order();
    if (n < 2) fail(errc::too_small, "corner checks require order >= 2");
    ZeroSetup s;
    s.decomp = eigh(a);
    const std::vector<double>& lam = s.decomp.eigenvalues;

    double scale = 0.0;
    for (double l : lam) scale = std::max(scale, std::abs(l));
    std::size_t i0 = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(lam[k]) < std::abs(lam[i0])) i0 = k;
    if (std::abs(lam[i0]) > 1e-8 * (1.0 + scale))
        fail(errc::not_shifted, "no eigenvalue near zero; closest is " + fmt_double(lam[i0]));

    const double range = lam.back() - lam.front();
    double neighbor_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k)
        if (k != i0) neighbor_gap = std::min(neighbor_gap, std::abs(lam[k] - lam[i0]));
    if (neighbor_gap <= 1e-8 * (1.0 + range))
        fail(errc::degenerate_kernel,
             "eigenvalue " + fmt_double(lam[i0]) + " is not simple (gap " +
                 fmt_double(neighbor_gap) + ")");

    s.zero_index = i0;
    s.lambda_n.reserve(n - 1);
    s.u = Matrix(n, n);
    std::size_t out = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == i0) continue;
        s.lambda_n.push_back(lam[k]);
        for (std::size_t r = 0; r < n; ++r) s.u(r, out) = s.decomp.vectors(r, k);
        ++out;
    }
    for (std::size_t r = 0; r < n; ++r) s.u(r, n - 1) = s.decomp.vectors(r, i0);
    return s;
}

inline ProofStep corner_identity_step(const HermitianMatrix& a, const ZeroSetup& s,
                                      double tol) {
    const std::size_t n = a.order();
    const cplx det_minor = determinant(principal_minor(a, n - 1).mat());
    const double u_nn_sq = std::norm(s.u(n - 1, n - 1));
    const double rhs = ordered_product(s.lambda_n) * u_nn_sq;
    const double defect =
        std::abs(det_minor - cplx(rhs)) / (1.0 + std::abs(det_minor) + std::abs(rhs));
    return make_step("corner_identity", defect, tol);
}

inline ProofStep block_factor_step(const HermitianMatrix& a, const ZeroSetup& s, double tol) {
    const std::size_t n = a.order();
    const BlockPartition ub = corner_partition(s.u);
    const std::size_t m = n - 1;

    // Scale columns of the leading block by the nonzero eigenvalues once.
    Matrix un_lam = ub.top_left;
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t r = 0; r < m; ++r) un_lam(r, c) *= s.lambda_n[c];

    double defect = 0.0;
    const Matrix mn = principal_minor(a, n - 1).mat();
    const Matrix mn_pred = un_lam * adjoint(ub.top_left);
    defect = std::max(defect, max_abs_diff(mn_pred, mn));

    // Companion blocks from the same product: the border column and corner.
    for (std::size_t r = 0; r < m; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < m; ++c) acc += un_lam(r, c) * std::conj(ub.bottom_left_row[c]);
        defect = std::max(defect, std::abs(acc - a(r, n - 1)));
    }
    cplx corner = 0.0;
    for (std::size_t c = 0; c < m; ++c)
        corner += s.lambda_n[c] * std::norm(ub.bottom_left_row[c]);
    defect = std::max(defect, std::abs(corner - a(n - 1, n - 1)));

    return make_step("block_factor", defect / (1.0 + max_abs(a.mat())), tol);
}

}  // namespace detail

// |M_n| against |Lambda_n| |u_{n,n}|^2 for a matrix whose zero eigenvalue is
// simple; the two sides come from elimination and from the eigensolver.
inline ProofStep corner_identity(const HermitianMatrix& a, double tol = 1e-8) {
    return detail::corner_identity_step(a, detail::zero_eigen_setup(a), tol);
}

// M_n = U_n Lambda_n U_n*, plus the border column and corner entry produced
// by the same block product.
inline ProofStep block_factor_check(const HermitianMatrix& a, double tol = 1e-8) {
    return detail::block_factor_step(a, detail::zero_eigen_setup(a), tol);
}

// Block equations of U U* = I for the corner split: leading block, last-column
// normalization, and the mixed off-diagonal block.
inline ProofStep unitarity_block_check(const Matrix& u, double tol = 1e-10) {
    if (u.rows() != u.cols() || u.rows() < 2)
        fail(errc::bad_shape, "unitary block check requires a square grid of order >= 2");
    const std::size_t n = u.rows();
    if (unitarity_defect(u) > 1e-10 * static_cast<double>(n))
        fail(errc::not_unitary, "input grid is not unitary within 1e-10 * n");

    const BlockPartition b = corner_partition(u);
    const std::size_t m = n - 1;
    double defect = 0.0;

    // (a) U_n U_n* + C1 C1* = E_{n-1}
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
            cplx acc = b.top_right_col[r] * std::conj(b.top_right_col[c]);
            for (std::size_t k = 0; k < m; ++k)
                acc += b.top_left(r, k) * std::conj(b.top_left(c, k));
            acc -= (r == c) ? cplx(1.0) : cplx(0.0);
            defect = std::max(defect, std::abs(acc));
        }

    // (b) C1* C1 + |u_nn|^2 = 1
    double colsum = std::norm(b.corner);
    for (std::size_t r = 0; r < m; ++r) colsum += std::norm(b.top_right_col[r]);
    defect = std::max(defect, std::abs(colsum - 1.0));

    // (c) U_n C2* + C1 conj(u_nn) = 0
    for (std::size_t r = 0; r < m; ++r) {
        cplx acc = b.top_right_col[r] * std::conj(b.corner);
        for (std::size_t k = 0; k < m; ++k)
            acc += b.top_left(r, k) * std::conj(b.bottom_left_row[k]);
        defect = std::max(defect, std::abs(acc));
    }

    return detail::make_step("unitarity_blocks", defect, tol * static_cast<double>(n));
}

// Rank-one determinant swap: det(E - C1 C1*) = 1 - C1* C1 = |u_nn|^2, the
// determinant route and the scalar route evaluated independently.
inline ProofStep sylvester_check(const std::vector<cplx>& c1, cplx u_nn, double tol = 1e-10) {
    const std::size_t m = c1.size();
    const double n = static_cast<double>(m + 1);
    double csq = 0.0;
    for (const cplx& z : c1) csq += std::norm(z);
    const double target = std::norm(u_nn);
    if (std::abs(csq + target - 1.0) > tol * n)
        fail(errc::normalization_violated,
             "column norm premise violated by " + fmt_double(std::abs(csq + target - 1.0)));

    Matrix e(m, m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
            e(r, c) = ((r == c) ? cplx(1.0) : cplx(0.0)) - c1[r] * std::conj(c1[c]);
    const cplx via_det = determinant(std::move(e));
    const double via_scalar = 1.0 - csq;

    double defect = std::abs(via_det - cplx(via_scalar));
    defect = std::max(defect, std::abs(via_det - cplx(target)));
    defect = std::max(defect, std::abs(via_scalar - target));
    return detail::make_step("sylvester", defect, tol * n);
}

// The whole chain for eigenvalue index i (0-based, ascending): shift that
// eigenvalue to zero, move its eigencolumn to the corner position, then run
// the four checks in proof order.
inline ProofTrace full_proof_trace(const HermitianMatrix& a, std::size_t i, double tol = 1e-8,
                                   double unitary_tol = 1e-10) {
    const std::vector<double> lam = spectrum(a);
    const std::size_t n = lam.size();
    if (i >= n) fail(errc::index_out_of_range, "eigenvalue index " + std::to_string(i));
    if (n < 2) fail(errc::too_small, "proof trace requires order >= 2");

    const double range = lam.back() - lam.front();
    for (std::size_t k = 0; k < n; ++k)
        if (k != i && std::abs(lam[k] - lam[i]) <= 1e-8 * (1.0 + range))
            fail(errc::degenerate_kernel,
                 "eigenvalue " + fmt_double(lam[i]) + " is repeated within tolerance");

    const HermitianMatrix shifted = shift(a, lam[i]);
    const detail::ZeroSetup setup = detail::zero_eigen_setup(shifted);

    ProofTrace trace;
    trace.shifted_eigenvalue = lam[i];
    trace.index = i;
    trace.steps.push_back(detail::corner_identity_step(shifted, setup, tol));
    trace.steps.push_back(detail::block_factor_step(shifted, setup, tol));
    trace.steps.push_back(unitarity_block_check(setup.u, unitary_tol));

    std::vector<cplx> c1(n - 1);
    for (std::size_t r = 0; r + 1 < n; ++r) c1[r] = setup.u(r, n - 1);
    trace.steps.push_back(sylvester_check(c1, setup.u(n - 1, n - 1), unitary_tol));

    trace.pass = true;
    for (const ProofStep& s : trace.steps) trace.pass = trace.pass && s.pass;
    return trace;
}

}  // namespace eigenid
