#pragma once

#include <cmath>
#include <optional>

#include "lpls/cmatrix.hpp"
#include "lpls/precision.hpp"

namespace lpls {

enum class FailureStage { None, Gram, Cholesky, Solve, Apply };

inline const char* to_string(FailureStage s) {
    switch (s) {
        case FailureStage::None: return "none";
        case FailureStage::Gram: return "gram";
        case FailureStage::Cholesky: return "cholesky";
        case FailureStage::Solve: return "solve";
        case FailureStage::Apply: return "apply";
    }
    return "?";
}

struct LsSolution {
    std::optional<CMatrix> X; // N x 1
    std::optional<CMatrix> W; // N x M weight matrix
    std::optional<CMatrix> L; // N x N lower triangular
    bool failed = false;
    FailureStage failure_stage = FailureStage::None;
};

struct ErrorMeasurement {
    double rel_err = std::numeric_limits<double>::quiet_NaN();
    double backward_err = std::numeric_limits<double>::quiet_NaN();
    double gram_err = std::numeric_limits<double>::quiet_NaN();
    bool failed = false;
    FailureStage failure_stage = FailureStage::None;
};

// The pipeline is written once against an arithmetic policy: ExactOps is
// plain binary64, LpOps routes every operation through a PrecisionContext.
// Both follow the same sequential left-to-right summation order. A pairwise
// (binary-tree) order would shrink the sqrt(N) accumulation factor to
// sqrt(log N) and could slot in as a third policy; it is intentionally not
// offered yet so measurements reflect the plain sequential detector.

struct ExactOps {
    double sqrt_(double x) const { return std::sqrt(x); }
    CScalar cmac(const CScalar& acc, const CScalar& a, const CScalar& b) const {
        // acc + conj(a)*b, associated like the non-fused emulated MAC so the
        // b = 52 pipeline reproduces this one bit for bit.
        double re = (acc.real() + a.real() * b.real()) + a.imag() * b.imag();
        double im = (acc.imag() + a.real() * b.imag()) - a.imag() * b.real();
        return {re, im};
    }
    double abs2_acc(double acc, const CScalar& z) const {
        double t = acc + z.real() * z.real();
        return t + z.imag() * z.imag();
    }
    double abs2_sub(double acc, const CScalar& z) const {
        double t = acc - z.real() * z.real();
        return t - z.imag() * z.imag();
    }
    CScalar cdiv_real(const CScalar& z, double d) const {
        return {z.real() / d, z.imag() / d};
    }
};

struct LpOps {
    PrecisionContext ctx;
    double sqrt_(double x) const { return lp_sqrt(x, ctx); }
    CScalar cmac(const CScalar& acc, const CScalar& a, const CScalar& b) const {
        return lp_cmul_acc(acc, a, b, ctx);
    }
    double abs2_acc(double acc, const CScalar& z) const { return lp_abs2_acc(acc, z, ctx); }
    double abs2_sub(double acc, const CScalar& z) const { return lp_abs2_sub(acc, z, ctx); }
    CScalar cdiv_real(const CScalar& z, double d) const { return lp_cdiv_real(z, d, ctx); }
};

namespace detail {

// A = H^H H, column dot column, i = 1..M in order. Only the lower triangle
// is computed; the upper is mirrored by conjugation. Diagonal entries are
// real sums of |h_i|^2, so the imaginary part is never formed.
template <typename Ops>
CMatrix gram_impl(const CMatrix& h, const Ops& ops) {
    const int m = h.rows(), n = h.cols();
    CMatrix a(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            CScalar acc{0.0, 0.0};
            for (int i = 0; i < m; ++i) acc = ops.cmac(acc, h(i, j), h(i, k));
            a(j, k) = acc;
            a(k, j) = std::conj(acc);
        }
        double d = 0.0;
        for (int i = 0; i < m; ++i) d = ops.abs2_acc(d, h(i, j));
        a(j, j) = d;
    }
    return a;
}

// Right-looking Cholesky, one pivot sqrt, a column scaling and a rank-1
// trailing update per step. Diagonal updates stay real.
template <typename Ops>
CMatrix cholesky_impl(const CMatrix& a, const Ops& ops) {
    const int n = a.rows();
    if (a.cols() != n) throw DimensionError("cholesky: matrix must be square");
    if (!is_hermitian(a)) throw DomainError("cholesky: matrix is not Hermitian");
    CMatrix w = a; // working copy; lower triangle + diagonal are maintained
    CMatrix l(n, n);
    for (int j = 0; j < n; ++j) {
        double pivot = w(j, j).real();
        if (!(pivot > 0.0))
            throw BreakdownError("cholesky: non-positive pivot at column " + std::to_string(j));
        double ljj = ops.sqrt_(pivot);
        l(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) l(i, j) = ops.cdiv_real(w(i, j), ljj);
        for (int k = j + 1; k < n; ++k) {
            for (int i = k + 1; i < n; ++i)
                w(i, k) = ops.cmac(w(i, k), l(k, j), -l(i, j)); // A_ik -= L_ij conj(L_kj)
            w(k, k) = ops.abs2_sub(w(k, k).real(), l(k, j));
        }
    }
    return l;
}

// W = L^-H (L^-1 H^H) by forward then back substitution; no triangular
// inverse is formed. Diagonal entries of L are real and positive.
template <typename Ops>
CMatrix weight_impl(const CMatrix& l, const CMatrix& h, const Ops& ops) {
    const int n = l.rows(), m = h.rows();
    if (l.cols() != n || h.cols() != n) throw DimensionError("weight: shape mismatch");
    for (int j = 0; j < n; ++j)
        if (l(j, j).real() == 0.0)
            throw DomainError("weight: zero diagonal in triangular solve");

    CMatrix z(n, m); // L z = H^H
    for (int c = 0; c < m; ++c) {
        for (int i = 0; i < n; ++i) {
            CScalar acc = std::conj(h(c, i)); // (H^H)_{i,c}
            for (int k = 0; k < i; ++k) acc = ops.cmac(acc, std::conj(l(i, k)), -z(k, c));
            z(i, c) = ops.cdiv_real(acc, l(i, i).real());
        }
    }
    CMatrix wgt(n, m); // L^H wgt = z
    for (int c = 0; c < m; ++c) {
        for (int i = n - 1; i >= 0; --i) {
            CScalar acc = z(i, c);
            for (int k = i + 1; k < n; ++k) acc = ops.cmac(acc, l(k, i), -wgt(k, c));
            wgt(i, c) = ops.cdiv_real(acc, l(i, i).real());
        }
    }
    return wgt;
}

// X = W Y with sequential summation.
template <typename Ops>
CMatrix apply_weight_impl(const CMatrix& wgt, const CMatrix& y, const Ops& ops) {
    if (wgt.cols() != y.rows() || y.cols() != 1)
        throw DimensionError("apply_weight: shape mismatch");
    CMatrix x(wgt.rows(), 1);
    for (int i = 0; i < wgt.rows(); ++i) {
        CScalar acc{0.0, 0.0};
        for (int k = 0; k < wgt.cols(); ++k)
            acc = ops.cmac(acc, std::conj(wgt(i, k)), y(k, 0));
        x(i, 0) = acc;
    }
    return x;
}

template <typename Ops>
LsSolution solve_impl(const CMatrix& h, const CMatrix& y, const Ops& ops,
                      bool apply_wy_low_precision) {
    if (h.rows() != y.rows() || y.cols() != 1)
        throw DimensionError("solve: H and Y shapes are incompatible");
    LsSolution sol;
    FailureStage stage = FailureStage::Gram;
    try {
        CMatrix a = gram_impl(h, ops);
        stage = FailureStage::Cholesky;
        sol.L = cholesky_impl(a, ops);
        stage = FailureStage::Solve;
        sol.W = weight_impl(*sol.L, h, ops);
        stage = FailureStage::Apply;
        if (apply_wy_low_precision)
            sol.X = apply_weight_impl(*sol.W, y, ops);
        else
            sol.X = apply_weight_impl(*sol.W, y, ExactOps{});
    } catch (const NumericalError&) {
        sol.failed = true;
        sol.failure_stage = stage;
    }
    return sol;
}

} // namespace detail

// Emulated-precision stages (the detector of interest).
inline CMatrix gram_lp(const CMatrix& h, const PrecisionContext& ctx) {
    return detail::gram_impl(h, LpOps{ctx});
}

inline CMatrix cholesky_lp(const CMatrix& a, const PrecisionContext& ctx) {
    return detail::cholesky_impl(a, LpOps{ctx});
}

inline CMatrix weight_lp(const CMatrix& l, const CMatrix& h, const PrecisionContext& ctx) {
    return detail::weight_impl(l, h, LpOps{ctx});
}

// Full chain gram -> cholesky -> weight -> X = W Y. The final product runs
// under ctx by default; apply_wy_low_precision = false keeps it in binary64.
inline LsSolution solve_lp(const CMatrix& h, const CMatrix& y, const PrecisionContext& ctx,
                           bool apply_wy_low_precision = true) {
    return detail::solve_impl(h, y, LpOps{ctx}, apply_wy_low_precision);
}

// Reference pipeline in binary64; failures only for numerically
// rank-deficient inputs.
inline LsSolution solve_exact(const CMatrix& h, const CMatrix& y) {
    return detail::solve_impl(h, y, ExactOps{}, true);
}

// a^H b of two column vectors under ctx, sequential summation.
inline CScalar lp_dot(const CMatrix& a, const CMatrix& b, const PrecisionContext& ctx) {
    if (a.rows() != b.rows() || a.cols() != 1 || b.cols() != 1)
        throw DimensionError("lp_dot: column vectors of equal length required");
    const LpOps ops{ctx};
    CScalar acc{0.0, 0.0};
    for (int i = 0; i < a.rows(); ++i) acc = ops.cmac(acc, a(i, 0), b(i, 0));
    return acc;
}

inline CScalar exact_dot(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != 1 || b.cols() != 1)
        throw DimensionError("exact_dot: column vectors of equal length required");
    const ExactOps ops;
    CScalar acc{0.0, 0.0};
    for (int i = 0; i < a.rows(); ++i) acc = ops.cmac(acc, a(i, 0), b(i, 0));
    return acc;
}

// Runs both pipelines and measures
//   rel_err      = ||X~ - X|| / ||X||,
//   backward_err = ||L~ L~^H - A~||_F / ||A||_F  (A~ = Gram that entered Cholesky),
//   gram_err     = ||A~ - H^H H||_F / ||H^H H||_F.
// A failed emulated solve is recorded, with whatever stages completed.
inline ErrorMeasurement measure_error(const CMatrix& h, const CMatrix& y,
                                      const PrecisionContext& ctx,
                                      bool apply_wy_low_precision = true) {
    ErrorMeasurement em;
    const ExactOps exact;
    CMatrix a_exact = detail::gram_impl(h, exact);
    const double a_norm = frobenius_norm(a_exact);
    CMatrix l_exact = detail::cholesky_impl(a_exact, exact);
    CMatrix w_exact = detail::weight_impl(l_exact, h, exact);
    CMatrix x_exact = detail::apply_weight_impl(w_exact, y, exact);

    const LpOps ops{ctx};
    FailureStage stage = FailureStage::Gram;
    try {
        CMatrix a_lp = detail::gram_impl(h, ops);
        em.gram_err = frobenius_norm(a_lp - a_exact) / a_norm;
        stage = FailureStage::Cholesky;
        CMatrix l_lp = detail::cholesky_impl(a_lp, ops);
        em.backward_err =
            frobenius_norm(gemm_exact(l_lp, conj_transpose(l_lp)) - a_lp) / a_norm;
        stage = FailureStage::Solve;
        CMatrix w_lp = detail::weight_impl(l_lp, h, ops);
        stage = FailureStage::Apply;
        CMatrix x_lp = apply_wy_low_precision
                           ? detail::apply_weight_impl(w_lp, y, ops)
                           : detail::apply_weight_impl(w_lp, y, exact);
        em.rel_err = vec_norm2(x_lp - x_exact) / vec_norm2(x_exact);
    } catch (const NumericalError&) {
        em.failed = true;
        em.failure_stage = stage;
    }
    return em;
}

} // namespace lpls
