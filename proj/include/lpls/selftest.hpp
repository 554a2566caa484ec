#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "lpls/measure.hpp"
#include "lpls/svd.hpp"
#include "lpls/sweep.hpp"

namespace lpls {

// Statistical invariant suite behind the `selftest` subcommand: one line per
// check, true iff all pass. Sample sizes are sized for tens of seconds; the
// acceptance suite runs the full-scale versions.

namespace detail {

inline bool report(std::ostream& out, const std::string& name, bool ok,
                   const std::string& detail_msg) {
    out << (ok ? "[ ok ] " : "[FAIL] ") << name;
    if (!detail_msg.empty()) out << ": " << detail_msg;
    out << '\n';
    return ok;
}

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

} // namespace detail

inline bool run_selftest(std::ostream& out) {
    bool all = true;
    const PrecisionContext half{10};
    const double eps = half.eps();

    {
        RngStream rng(1001, 0);
        double sum = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            int e = static_cast<int>(rng.next_u32() % 17) - 8;
            double x = (1.0 + rng.uniform()) * std::ldexp(1.0, e);
            double err = (round_real(x, half) - x) * std::ldexp(1.0, -e);
            sum += err * err;
        }
        double rms = std::sqrt(sum / n);
        all &= detail::report(out, "rounding rms ~ eps", std::abs(rms / eps - 1.0) < 0.05,
                              detail::fmt("rms/eps = %.4f", rms / eps));
    }
    {
        RngStream rng(1002, 0);
        bool ok = true;
        for (int b : {5, 10, 23}) {
            PrecisionContext ctx{b};
            for (int i = 0; i < 20000 && ok; ++i) {
                int e = static_cast<int>(rng.next_u32() % 81) - 40;
                double x = (1.0 + rng.uniform()) * std::ldexp(1.0, e);
                if (rng.next_u32() & 1) x = -x;
                double r = round_real(x, ctx);
                ok = ok && round_real(r, ctx) == r &&
                     std::abs(r - x) <= ctx.unit_roundoff() * std::abs(x);
            }
        }
        all &= detail::report(out, "rounding idempotent, |err| <= u|x|", ok, "");
    }
    {
        ScalarLawRms s64 = measure_scalar_rms(64, 2000, half, 77);
        ScalarLawRms s1k = measure_scalar_rms(1024, 2000, half, 78);
        double ratio = s1k.orthogonal / s64.orthogonal;
        bool ok = ratio <= 1.8 && s64.orthogonal <= 3.0 * eps && s1k.orthogonal <= 3.0 * eps;
        all &= detail::report(out, "orthogonal dot error flat in N", ok,
                              detail::fmt("rms/eps = %.3f, %.3f; ratio = %.3f",
                                          s64.orthogonal / eps, s1k.orthogonal / eps, ratio));
    }
    {
        PrecisionContext single{23};
        ScalarLawRms s64 = measure_scalar_rms(64, 2000, single, 79);
        ScalarLawRms s1k = measure_scalar_rms(1024, 2000, single, 80);
        double ratio = s1k.parallel / s64.parallel;
        all &= detail::report(out, "parallel dot error grows like sqrt(N)",
                              ratio >= 2.8 && ratio <= 5.7,
                              detail::fmt("ratio(1024/64) = %.3f", ratio));
    }
    {
        PipelineErrorStats n16 = measure_gram_cholesky_errors(16, 16, 10.0, 100, half, 81);
        PipelineErrorStats n64 = measure_gram_cholesky_errors(64, 64, 10.0, 100, half, 82);
        double ratio = n64.mean_backward / n16.mean_backward;
        bool ok = n16.mean_backward <= 4.0 * std::sqrt(16.0) * eps &&
                  n64.mean_backward <= 4.0 * std::sqrt(64.0) * eps && ratio >= 1.4 &&
                  ratio <= 2.9;
        all &= detail::report(out, "cholesky backward error ~ sqrt(N) eps", ok,
                              detail::fmt("mean/(sqrt(N)eps) = %.3f, %.3f; ratio = %.3f",
                                          n16.mean_backward / (4.0 * eps),
                                          n64.mean_backward / (8.0 * eps), ratio));
    }
    {
        PipelineErrorStats m16 = measure_gram_cholesky_errors(16, 8, 10.0, 100, half, 83);
        PipelineErrorStats m256 = measure_gram_cholesky_errors(256, 8, 10.0, 100, half, 84);
        double ratio = m256.mean_gram / m16.mean_gram;
        all &= detail::report(out, "gram error grows like sqrt(M)",
                              ratio >= 2.8 && ratio <= 5.7,
                              detail::fmt("ratio(256/16) = %.3f", ratio));
    }
    {
        bool ok = true;
        double worst = 0.0;
        for (int rep = 0; rep < 50 && ok; ++rep) {
            RngStream rng(1100, static_cast<std::uint64_t>(rep));
            for (auto [m, n] : {std::pair{5, 2}, std::pair{6, 3}}) {
                CMatrix a(m, n), b(m, n);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j) {
                        a(i, j) = complex_gaussian(rng);
                        b(i, j) = complex_gaussian(rng);
                    }
                double rel = binet_cauchy_check(a, b) / binet_cauchy_scale(a, b);
                worst = std::max(worst, rel);
                ok = ok && rel <= 1e-12;
            }
        }
        all &= detail::report(out, "binet-cauchy identity", ok,
                              detail::fmt("worst defect/scale = %.2e", worst));
    }
    {
        // C(8,2) * E V^2(A_I) = V^2(A) = 1 for Haar 8x2 column blocks.
        RngStream rng(1200, 0);
        const int samples = 3000;
        double sum = 0.0, sumsq = 0.0;
        for (int s = 0; s < samples; ++s) {
            CMatrix a = detail::stiefel(8, 2, rng);
            int i = static_cast<int>(rng.next_u32() % 8);
            int j = static_cast<int>(rng.next_u32() % 7);
            if (j >= i) ++j;
            CMatrix sub = detail::take_rows(a, {std::min(i, j), std::max(i, j)});
            double v2 = std::norm(detail::det_lu(sub));
            sum += v2;
            sumsq += v2 * v2;
        }
        double mean = sum / samples;
        double se = std::sqrt((sumsq / samples - mean * mean) / samples);
        double scaled = 28.0 * mean;
        bool ok = std::abs(scaled - 1.0) <= 3.0 * 28.0 * se;
        all &= detail::report(out, "subset volume identity (3 sigma)", ok,
                              detail::fmt("C(8,2) mean V^2 = %.4f +/- %.4f", scaled,
                                          28.0 * se));
    }
    {
        SweepConfig cfg;
        cfg.rows = cfg.cols = 16;
        cfg.cond_min = 1.0;
        cfg.cond_max = 50.0;
        cfg.cond_points = 8;
        cfg.trials = 50;
        cfg.mantissa_bits = 10;
        cfg.seed = 4242;
        auto recs = run_sweep(cfg);
        int dominated = 0;
        for (const auto& r : recs)
            if (r.mean_rel_err <= r.bound_final_cond2) ++dominated;
        all &= detail::report(out, "mean error below cond2^2 bound", dominated >= 7,
                              detail::fmt("dominated at %.0f of 8 points",
                                          static_cast<double>(dominated)));
    }
    out << (all ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
    return all;
}

} // namespace lpls
