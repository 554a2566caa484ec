#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "lpls/cmatrix.hpp"

namespace lpls {

struct SvdResult {
    std::vector<double> singular_values; // descending, length min(M,N)
    std::optional<CMatrix> U;            // M x min(M,N)
    std::optional<CMatrix> V;            // N x min(M,N); A = U diag(s) V^H
    bool converged = true;
    int sweeps = 0;
};

namespace detail {

constexpr int kJacobiMaxSweeps = 60;
// Per-pair skip threshold chosen so that a rotation-free sweep implies
// ||offdiag(Gram)||_F < 1e-14 * ||A||_F^2.
constexpr double kJacobiPairTol = 5e-15;

// One-sided Jacobi on the columns of B (rows >= cols). Returns when a full
// sweep applies no rotation. V accumulates the applied column operations.
inline SvdResult svd_jacobi_tall(const CMatrix& a, bool want_vectors) {
    const int m = a.rows(), n = a.cols();
    CMatrix b = a;
    CMatrix v = CMatrix::identity(n);

    SvdResult out;
    out.converged = false;
    for (int sweep = 1; sweep <= kJacobiMaxSweeps; ++sweep) {
        out.sweeps = sweep;
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double gpp = 0.0, gqq = 0.0;
                CScalar gpq{0.0, 0.0};
                for (int i = 0; i < m; ++i) {
                    gpp += std::norm(b(i, p));
                    gqq += std::norm(b(i, q));
                    gpq += std::conj(b(i, p)) * b(i, q);
                }
                double r = std::abs(gpq);
                if (r <= kJacobiPairTol * std::sqrt(gpp * gqq) || r == 0.0) continue;
                rotated = true;

                CScalar phase = std::conj(gpq) / r; // makes the pair inner product real
                double tau = (gqq - gpp) / (2.0 * r);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (int i = 0; i < m; ++i) {
                    CScalar bq = b(i, q) * phase;
                    CScalar bp = b(i, p);
                    b(i, p) = c * bp - s * bq;
                    b(i, q) = s * bp + c * bq;
                }
                for (int i = 0; i < n; ++i) {
                    CScalar vq = v(i, q) * phase;
                    CScalar vp = v(i, p);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) {
            out.converged = true;
            break;
        }
    }

    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += std::norm(b(i, j));
        sigma[j] = std::sqrt(s);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return sigma[x] > sigma[y]; });

    out.singular_values.resize(n);
    for (int j = 0; j < n; ++j) out.singular_values[j] = sigma[order[j]];

    if (want_vectors) {
        CMatrix u(m, n), vs(n, n);
        for (int j = 0; j < n; ++j) {
            int src = order[j];
            double s = sigma[src];
            for (int i = 0; i < m; ++i) u(i, j) = s > 0.0 ? b(i, src) / s : CScalar{0.0, 0.0};
            for (int i = 0; i < n; ++i) vs(i, j) = v(i, src);
        }
        out.U = std::move(u);
        out.V = std::move(vs);
    }
    return out;
}

} // namespace detail

// Singular value decomposition by one-sided Jacobi; A = U diag(s) V^H.
inline SvdResult svd_jacobi(const CMatrix& a, bool want_vectors = false) {
    if (a.rows() >= a.cols()) return detail::svd_jacobi_tall(a, want_vectors);
    SvdResult r = detail::svd_jacobi_tall(conj_transpose(a), want_vectors);
    std::swap(r.U, r.V);
    return r;
}

// Matrix volume: sqrt(max(det A^H A, det A A^H)), the product of the
// singular values of the thin side.
inline double volume(const CMatrix& a) {
    SvdResult s = svd_jacobi(a);
    double v = 1.0;
    for (double sv : s.singular_values) v *= sv;
    return v;
}

namespace detail {

// Determinant of a small square complex matrix by LU with partial pivoting.
inline CScalar det_lu(CMatrix a) {
    const int n = a.rows();
    CScalar det{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            double cand = std::abs(a(i, k));
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (best == 0.0) return {0.0, 0.0};
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
            det = -det;
        }
        det *= a(k, k);
        for (int i = k + 1; i < n; ++i) {
            CScalar f = a(i, k) / a(k, k);
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

template <typename Visit>
void for_each_combination(int m, int n, Visit visit) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        visit(idx);
        int i = n - 1;
        while (i >= 0 && idx[i] == m - n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline CMatrix take_rows(const CMatrix& a, const std::vector<int>& rows) {
    CMatrix r(static_cast<int>(rows.size()), a.cols());
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(rows[i], j);
    return r;
}

inline void binet_cauchy_validate(const CMatrix& a, const CMatrix& b) {
    if (!a.same_shape(b)) throw DimensionError("binet_cauchy_check: shapes differ");
    if (a.rows() < a.cols())
        throw DimensionError("binet_cauchy_check: needs rows >= cols");
    if (a.rows() > 12)
        throw DimensionError("binet_cauchy_check: too large to enumerate (rows > 12)");
}

} // namespace detail

// Absolute defect of det(A^H B) = sum over row subsets I of
// conj(det A_I) * det B_I, enumerated over all C(M,N) subsets.
inline double binet_cauchy_check(const CMatrix& a, const CMatrix& b) {
    detail::binet_cauchy_validate(a, b);
    CScalar lhs = detail::det_lu(gemm_exact(a, b, true));
    CScalar rhs{0.0, 0.0};
    detail::for_each_combination(a.rows(), a.cols(), [&](const std::vector<int>& idx) {
        rhs += std::conj(detail::det_lu(detail::take_rows(a, idx))) *
               detail::det_lu(detail::take_rows(b, idx));
    });
    return std::abs(lhs - rhs);
}

// Natural scale for the defect above: sum over subsets of |det A_I||det B_I|.
inline double binet_cauchy_scale(const CMatrix& a, const CMatrix& b) {
    detail::binet_cauchy_validate(a, b);
    double s = 0.0;
    detail::for_each_combination(a.rows(), a.cols(), [&](const std::vector<int>& idx) {
        s += std::abs(detail::det_lu(detail::take_rows(a, idx))) *
             std::abs(detail::det_lu(detail::take_rows(b, idx)));
    });
    return s;
}

} // namespace lpls
