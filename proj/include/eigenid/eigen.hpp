#pragma once

#include <limits>
#include <numeric>

#include "eigenid/matrix.hpp"

namespace eigenid {

// Result of the unitary reduction A = Q T Q* with T real symmetric
// tridiagonal. accumulated_q is empty when accumulation was skipped.
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;
    Matrix accumulated_q;
};

// Ascending eigenvalues; column i of vectors is the eigenvector for
// eigenvalues[i]. vectors is empty when only the spectrum was requested.
// Eigenvector phases are not canonicalized.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    Matrix vectors;
};

namespace detail {

// Complex Householder reduction to tridiagonal form. Reflectors zero each
// column below the first subdiagonal; a final diagonal phase similarity makes
// the subdiagonal real and nonnegative, so the iteration core can stay real.
inline Tridiagonal householder_tridiagonalize(const Matrix& a, bool accumulate) {
    const std::size_t n = a.rows();
    Matrix w = a;
    Matrix q = accumulate ? identity_matrix(n) : Matrix();

    std::vector<cplx> v, p, wv, tmp;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - 1 - k;  // active column length
        double tail = 0.0;
        for (std::size_t r = k + 2; r < n; ++r) tail += std::norm(w(r, k));
        if (tail == 0.0) continue;  // column already in tridiagonal position

        const cplx x0 = w(k + 1, k);
        const double sigma = std::sqrt(tail + std::norm(x0));
        const cplx phase = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
        const cplx alpha = -phase * sigma;  // sign opposes x0: no cancellation in v[0]

        v.assign(m, cplx(0.0));
        for (std::size_t r = 0; r < m; ++r) v[r] = w(k + 1 + r, k);
        v[0] -= alpha;
        double vnorm = 0.0;
        for (const cplx& z : v) vnorm += std::norm(z);
        vnorm = std::sqrt(vnorm);
        for (cplx& z : v) z /= vnorm;

        // Hermitian rank-2 update of the trailing block:
        //   H T H = T - 2 v w* - 2 w v*  with  w = T v - (v* T v) v.
        p.assign(m, cplx(0.0));
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) p[r] += w(k + 1 + r, k + 1 + c) * v[c];
        double kappa = 0.0;
        for (std::size_t r = 0; r < m; ++r) kappa += (std::conj(v[r]) * p[r]).real();
        wv.assign(m, cplx(0.0));
        for (std::size_t r = 0; r < m; ++r) wv[r] = p[r] - kappa * v[r];
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                w(k + 1 + r, k + 1 + c) -=
                    2.0 * (v[r] * std::conj(wv[c]) + wv[r] * std::conj(v[c]));

        w(k + 1, k) = alpha;
        w(k, k + 1) = std::conj(alpha);
        for (std::size_t r = k + 2; r < n; ++r) {
            w(r, k) = 0.0;
            w(k, r) = 0.0;
        }

        if (accumulate) {
            // q <- q (I - 2 v v*) applied to columns k+1..n-1.
            tmp.assign(n, cplx(0.0));
            for (std::size_t rr = 0; rr < n; ++rr)
                for (std::size_t c = 0; c < m; ++c) tmp[rr] += q(rr, k + 1 + c) * v[c];
            for (std::size_t rr = 0; rr < n; ++rr)
                for (std::size_t c = 0; c < m; ++c)
                    q(rr, k + 1 + c) -= 2.0 * tmp[rr] * std::conj(v[c]);
        }
    }

    Tridiagonal t;
    t.diag.resize(n);
    for (std::size_t i = 0; i < n; ++i) t.diag[i] = w(i, i).real();
    if (n > 1) {
        t.offdiag.resize(n - 1);
        cplx d = 1.0;  // accumulated phase for column scaling
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const cplx tk = w(k + 1, k);
            const double mag = std::abs(tk);
            t.offdiag[k] = mag;
            const cplx ph = (mag == 0.0) ? cplx(1.0) : tk / mag;
            d *= ph;
            if (accumulate)
                for (std::size_t r = 0; r < n; ++r) q(r, k + 1) *= d;
        }
    }
    t.accumulated_q = std::move(q);
    return t;
}

// Implicit-shift QL with Wilkinson shift on a real symmetric tridiagonal.
// d has length n, e length n (last slot is scratch). Rotations accumulate
// into the columns of *q when q is non-null. Deflation uses
// |e[k]| <= eps (|d[k]| + |d[k+1]|); at most 50 sweeps per eigenvalue.
inline void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e, Matrix* q) {
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            while (m + 1 < n && std::abs(e[m]) > eps * (std::abs(d[m]) + std::abs(d[m + 1])))
                ++m;
            if (m == l) break;
            if (iter++ == 50)
                fail(errc::no_convergence,
                     "QL sweep cap exceeded at eigenvalue " + std::to_string(l));
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            int i = m - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (q) {
                    for (std::size_t row = 0; row < q->rows(); ++row) {
                        const cplx f2 = (*q)(row, i + 1);
                        (*q)(row, i + 1) = s * (*q)(row, i) + c * f2;
                        (*q)(row, i) = c * (*q)(row, i) - s * f2;
                    }
                }
            }
            if (underflow && i >= l) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

}  // namespace detail

inline Tridiagonal tridiagonalize(const HermitianMatrix& a) {
    return detail::householder_tridiagonalize(a.mat(), true);
}

inline EigenDecomposition tridiag_eigen(const Tridiagonal& t, bool want_vectors) {
    const std::size_t n = t.diag.size();
    if (n == 0) fail(errc::bad_shape, "empty tridiagonal");
    if (t.offdiag.size() + 1 != n)
        fail(errc::length_mismatch, "offdiag length must be order - 1");
    std::vector<double> d = t.diag;
    std::vector<double> e = t.offdiag;
    e.push_back(0.0);
    Matrix q;
    if (want_vectors) {
        const bool have_q = t.accumulated_q.rows() == n && t.accumulated_q.cols() == n;
        q = have_q ? t.accumulated_q : identity_matrix(n);
    }
    detail::ql_implicit_shift(d, e, want_vectors ? &q : nullptr);

    // Ascending order; stable so ties keep iteration output order.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = d[idx[i]];
    if (want_vectors) {
        out.vectors = Matrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < n; ++r) out.vectors(r, i) = q(r, idx[i]);
    }
    return out;
}

inline EigenDecomposition eigh(const HermitianMatrix& a) {
    return tridiag_eigen(tridiagonalize(a), true);
}

// Eigenvalues only: skips all rotation accumulation.
inline std::vector<double> spectrum(const HermitianMatrix& a) {
    const Tridiagonal t = detail::householder_tridiagonalize(a.mat(), false);
    return tridiag_eigen(t, false).eigenvalues;
}

struct ResidualReport {
    double max_residual = 0.0;             // max_i ||A v_i - lambda_i v_i||_2
    double max_orthonormality_defect = 0.0;  // max |V*V - I|
    bool ascending = true;
};

inline ResidualReport residual_report(const HermitianMatrix& a, const EigenDecomposition& d) {
    const std::size_t n = a.order();
    if (d.eigenvalues.size() != n || d.vectors.rows() != n || d.vectors.cols() != n)
        fail(errc::dimension_mismatch, "decomposition order does not match matrix");
    ResidualReport rep;
    for (std::size_t i = 0; i < n; ++i) {
        double norm2 = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            cplx acc = 0.0;
            for (std::size_t c = 0; c < n; ++c) acc += a(r, c) * d.vectors(c, i);
            acc -= d.eigenvalues[i] * d.vectors(r, i);
            norm2 += std::norm(acc);
        }
        rep.max_residual = std::max(rep.max_residual, std::sqrt(norm2));
    }
    rep.max_orthonormality_defect = unitarity_defect(d.vectors);
    rep.ascending = std::is_sorted(d.eigenvalues.begin(), d.eigenvalues.end());
    return rep;
}

}  // namespace eigenid
