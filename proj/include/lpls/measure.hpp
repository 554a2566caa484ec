#pragma once

#include <cmath>
#include <cstdint>

#include "lpls/ensembles.hpp"
#include "lpls/pipeline.hpp"

namespace lpls {

// Monte-Carlo measurement routines shared by the statistical tests and the
// selftest command. Every routine is deterministic in (seed, parameters).

struct ScalarLawRms {
    double parallel = 0.0;   // RMS |Delta(a^H a)| over unit vectors
    double orthogonal = 0.0; // RMS |Delta(a^H b)| over exactly orthogonal unit pairs
};

// Dot-product rounding error against the binary64 reference. Orthogonal
// partners are produced by one Gram-Schmidt step in working precision.
inline ScalarLawRms measure_scalar_rms(int n, int pairs, const PrecisionContext& ctx,
                                       std::uint64_t seed) {
    double sum_par = 0.0, sum_orth = 0.0;
    for (int p = 0; p < pairs; ++p) {
        RngStream rng(seed, static_cast<std::uint64_t>(p));
        CMatrix a = random_unit_vector(n, rng);
        CScalar d_par = lp_dot(a, a, ctx) - exact_dot(a, a);
        sum_par += std::norm(d_par);

        CMatrix braw = random_unit_vector(n, rng);
        CScalar proj = exact_dot(a, braw);
        CMatrix b(n, 1);
        for (int i = 0; i < n; ++i) b(i, 0) = braw(i, 0) - proj * a(i, 0);
        double nrm = vec_norm2(b);
        for (int i = 0; i < n; ++i) b(i, 0) /= nrm;
        CScalar d_orth = lp_dot(a, b, ctx) - exact_dot(a, b);
        sum_orth += std::norm(d_orth);
    }
    return {std::sqrt(sum_par / pairs), std::sqrt(sum_orth / pairs)};
}

struct PipelineErrorStats {
    double mean_backward = 0.0;
    double mean_gram = 0.0;
    int ok = 0;
    int failed = 0;
};

// Mean Gram and Cholesky backward errors over RANDSVD draws; only the first
// two pipeline stages run. Breakdowns are counted and excluded.
inline PipelineErrorStats measure_gram_cholesky_errors(int m, int n, double cond,
                                                       int trials,
                                                       const PrecisionContext& ctx,
                                                       std::uint64_t seed) {
    PipelineErrorStats st;
    double sum_back = 0.0, sum_gram = 0.0;
    for (int t = 0; t < trials; ++t) {
        RngStream rng(seed, static_cast<std::uint64_t>(t));
        RandsvdSpec spec{m, n, cond};
        CMatrix h = randsvd(spec, rng);
        CMatrix a_exact = gemm_exact(h, h, true);
        double a_norm = frobenius_norm(a_exact);
        try {
            CMatrix a_lp = gram_lp(h, ctx);
            double gram_err = frobenius_norm(a_lp - a_exact) / a_norm;
            CMatrix l_lp = cholesky_lp(a_lp, ctx);
            double back_err =
                frobenius_norm(gemm_exact(l_lp, conj_transpose(l_lp)) - a_lp) / a_norm;
            sum_back += back_err;
            sum_gram += gram_err;
            ++st.ok;
        } catch (const NumericalError&) {
            ++st.failed;
        }
    }
    if (st.ok > 0) {
        st.mean_backward = sum_back / st.ok;
        st.mean_gram = sum_gram / st.ok;
    }
    return st;
}

struct SolveErrorStats {
    double mean_rel = 0.0;
    int ok = 0;
    int failed = 0;
};

// Mean forward error of the full detector over RANDSVD draws with consistent
// right-hand sides Y = H x0, ||x0|| = 1.
inline SolveErrorStats measure_solve_errors(int m, int n, double cond, int trials,
                                            const PrecisionContext& ctx,
                                            std::uint64_t seed,
                                            bool apply_wy_low_precision = true) {
    SolveErrorStats st;
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        RngStream rng(seed, static_cast<std::uint64_t>(t));
        RandsvdSpec spec{m, n, cond};
        CMatrix h = randsvd(spec, rng);
        CMatrix x0 = random_unit_vector(n, rng);
        CMatrix y = gemm_exact(h, x0);
        try {
            ErrorMeasurement em = measure_error(h, y, ctx, apply_wy_low_precision);
            if (em.failed) {
                ++st.failed;
            } else {
                sum += em.rel_err;
                ++st.ok;
            }
        } catch (const NumericalError&) {
            ++st.failed;
        }
    }
    if (st.ok > 0) st.mean_rel = sum / st.ok;
    return st;
}

// Least-squares slope of log(y) against log(x), skipping non-finite points.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace lpls
