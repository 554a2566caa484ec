#pragma once

#include <cmath>

#include "lpls/cmatrix.hpp"
#include "lpls/pipeline.hpp"
#include "lpls/svd.hpp"

namespace lpls {

namespace detail {

inline constexpr double kRankTol = 1e-12;

// Singular values with the full-rank check used by the condition numbers.
inline std::vector<double> checked_sigma(const CMatrix& a) {
    SvdResult s = svd_jacobi(a);
    if (s.singular_values.empty() || !(s.singular_values.front() > 0.0))
        throw RankDeficientError("condition number of a zero matrix");
    for (double sv : s.singular_values)
        if (sv <= kRankTol * s.singular_values.front())
            throw RankDeficientError("matrix is rank deficient at tolerance 1e-12");
    return s.singular_values;
}

inline double cond2_from_sigma(const std::vector<double>& s) {
    return s.front() / s.back();
}

inline double condF_from_sigma(const std::vector<double>& s) {
    double fwd = 0.0, inv = 0.0;
    for (double sv : s) {
        fwd += sv * sv;
        inv += 1.0 / (sv * sv);
    }
    return std::sqrt(fwd) * std::sqrt(inv);
}

} // namespace detail

// cond2 = sigma_1 / sigma_r, condF = ||A||_F ||A^+||_F over the nonzero
// spectrum. Throws RankDeficientError when the tolerance truncates.
inline double cond2(const CMatrix& a) {
    return detail::cond2_from_sigma(detail::checked_sigma(a));
}

inline double condF(const CMatrix& a) {
    return detail::condF_from_sigma(detail::checked_sigma(a));
}

// Worst-case backward bound for Cholesky: elementwise (N+1) u |L||L^H| with
// its Frobenius and spectral corollaries (N+1) sqrt(N) u ||A||_F and
// (N+1) N u ||A||_2.
struct ClassicalBound {
    CMatrix elementwise;
    double fro = 0.0;
    double spectral = 0.0;
};

inline ClassicalBound bound_classical(const CMatrix& a, const CMatrix& l_exact,
                                      const PrecisionContext& ctx) {
    const int n = a.rows();
    if (a.cols() != n || l_exact.rows() != n || l_exact.cols() != n)
        throw DimensionError("bound_classical: square matrices of equal size required");
    const double u = ctx.unit_roundoff();
    CMatrix abs_l = elementwise_abs(l_exact);
    CMatrix element = (static_cast<double>(n + 1) * u) *
                      gemm_exact(abs_l, conj_transpose(abs_l));
    SvdResult s = svd_jacobi(a);
    double fro = (n + 1) * std::sqrt(static_cast<double>(n)) * u * frobenius_norm(a);
    double spectral = static_cast<double>(n + 1) * n * u * s.singular_values.front();
    return {std::move(element), fro, spectral};
}

// Classical scalar-product bound: sqrt(N) eps ||a|| ||b||.
inline double bound_scalar_higham(int n, double norm_a, double norm_b,
                                  const PrecisionContext& ctx) {
    return std::sqrt(static_cast<double>(n)) * ctx.eps() * norm_a * norm_b;
}

// Volume-based scalar-product bound: sqrt(N) eps |a^H b| + eps ||a|| ||b||.
// The first term vanishes for orthogonal pairs, removing the sqrt(N) growth.
inline double bound_scalar_new(int n, double inner_abs, double norm_a, double norm_b,
                               const PrecisionContext& ctx) {
    return std::sqrt(static_cast<double>(n)) * ctx.eps() * inner_abs +
           ctx.eps() * norm_a * norm_b;
}

// Dominant Gram-product error term sqrt(M) eps ||A||_F.
inline double bound_gram(int m, double fro_a, const PrecisionContext& ctx) {
    return std::sqrt(static_cast<double>(m)) * ctx.eps() * fro_a;
}

// Probabilistic Cholesky backward bound per triangular factor:
// sqrt(N) eps ||A||_F.
inline double bound_cholesky(int n, double fro_a, const PrecisionContext& ctx) {
    return std::sqrt(static_cast<double>(n)) * ctx.eps() * fro_a;
}

// Symmetrized form Delta A = Delta A_1 + Delta A_1^H, twice the per-factor bound.
inline double bound_cholesky_symmetrized(int n, double fro_a, const PrecisionContext& ctx) {
    return 2.0 * bound_cholesky(n, fro_a, ctx);
}

// Forward solution bound (sqrt(M)/N) eps condF(H^H H) and its coarser
// cond2 form sqrt(M) eps cond2(H)^2; the first never exceeds the second.
inline double bound_final(int m, int n, double condF_a, const PrecisionContext& ctx) {
    return std::sqrt(static_cast<double>(m)) / n * ctx.eps() * condF_a;
}

inline double bound_final_cond2(int m, double cond2_h, const PrecisionContext& ctx) {
    return std::sqrt(static_cast<double>(m)) * ctx.eps() * cond2_h * cond2_h;
}

struct BoundReport {
    double eps = 0.0;
    double u = 0.0;
    double classical_fro = 0.0;
    double classical_spectral = 0.0;
    double gram_bound = 0.0;
    double cholesky_bound = 0.0;
    double final_bound = 0.0;
    double final_bound_cond2_form = 0.0;
    double cond2_H = 0.0;
    double condF_A = 0.0;
};

// Evaluates every bound for one channel matrix H under ctx. Condition
// numbers are measured from one SVD of H (sigma(A) = sigma(H)^2).
inline BoundReport make_bound_report(const CMatrix& h, const PrecisionContext& ctx) {
    BoundReport r;
    r.eps = ctx.eps();
    r.u = ctx.unit_roundoff();

    SvdResult s = svd_jacobi(h);
    if (s.singular_values.empty() || !(s.singular_values.front() > 0.0))
        throw RankDeficientError("bound report of a zero matrix");
    for (double sv : s.singular_values)
        if (sv <= detail::kRankTol * s.singular_values.front())
            throw RankDeficientError("bound report: H is rank deficient");

    const int m = h.rows(), n = h.cols();
    std::vector<double> sig_a;
    sig_a.reserve(s.singular_values.size());
    for (double sv : s.singular_values) sig_a.push_back(sv * sv);

    double fro_a = 0.0;
    for (double sa : sig_a) fro_a += sa * sa;
    fro_a = std::sqrt(fro_a);

    r.cond2_H = detail::cond2_from_sigma(s.singular_values);
    r.condF_A = detail::condF_from_sigma(sig_a);
    r.classical_fro =
        (n + 1) * std::sqrt(static_cast<double>(n)) * r.u * fro_a;
    r.classical_spectral = static_cast<double>(n + 1) * n * r.u * sig_a.front();
    r.gram_bound = bound_gram(m, fro_a, ctx);
    r.cholesky_bound = bound_cholesky(n, fro_a, ctx);
    r.final_bound = bound_final(m, n, r.condF_A, ctx);
    r.final_bound_cond2_form = bound_final_cond2(m, r.cond2_H, ctx);
    return r;
}

} // namespace lpls
