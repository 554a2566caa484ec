#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <thread>
#include <vector>

#include "lpls/bounds.hpp"
#include "lpls/ensembles.hpp"
#include "lpls/pipeline.hpp"

namespace lpls {

struct SweepConfig {
    int rows = 32;
    int cols = 32;
    double cond_min = 1.0;
    double cond_max = 100.0;
    int cond_points = 20;
    int trials = 100;
    int mantissa_bits = 10;
    bool fma = true;
    bool apply_wy_low_precision = true;
    std::uint64_t seed = 0;
    int workers = 1;

    PrecisionContext context() const {
        return PrecisionContext{mantissa_bits, Rounding::NearestEven, fma,
                                RangePolicy::Unbounded};
    }

    void validate() const {
        if (rows < 1 || cols < 1) throw DimensionError("sweep: dimensions must be positive");
        if (rows < cols) throw DimensionError("sweep: rows must be >= cols for full column rank");
        if (cond_min < 1.0) throw DimensionError("sweep: cond_min must be >= 1");
        if (cond_max < cond_min) throw DimensionError("sweep: cond_max must be >= cond_min");
        if (cond_points < 1) throw DimensionError("sweep: cond_points must be >= 1");
        if (trials < 1) throw DimensionError("sweep: trials must be >= 1");
        if (workers < 1) throw DimensionError("sweep: workers must be >= 1");
        context().validate();
    }

    std::vector<double> cond_targets() const {
        std::vector<double> t(cond_points);
        if (cond_points == 1) {
            t[0] = cond_min;
            return t;
        }
        const double l0 = std::log(cond_min), l1 = std::log(cond_max);
        for (int p = 0; p < cond_points; ++p)
            t[p] = std::exp(l0 + (l1 - l0) * p / (cond_points - 1));
        return t;
    }
};

// One condition-number bucket; statistics over successful trials only.
struct SweepRecord {
    double cond_target = 0.0;
    double cond2_H_mean = 0.0;
    double condF_A_mean = 0.0;
    long trials_ok = 0;
    long trials_failed = 0;
    double mean_rel_err = 0.0;
    double std_rel_err = 0.0;
    double mean_backward_err = 0.0;
    double mean_gram_err = 0.0;
    double bound_final = 0.0;
    double bound_final_cond2 = 0.0;
    double bound_classical_fro = 0.0;
};

namespace detail {

struct TrialResult {
    bool ok = false;
    double rel = 0.0, back = 0.0, gram = 0.0;
    double cond2_h = 0.0, condF_a = 0.0, fro_a = 0.0;
};

// Order-insensitive compensated accumulator (Neumaier); aggregation below
// always runs in trial-index order, so results are schedule-independent.
struct CompensatedSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

inline TrialResult run_trial(const SweepConfig& cfg, const PrecisionContext& ctx,
                             double cond_target, std::uint64_t stream) {
    TrialResult r;
    RngStream rng(cfg.seed, stream);
    RandsvdSpec spec{cfg.rows, cfg.cols, cond_target};
    CMatrix h = randsvd(spec, rng);
    CMatrix x0 = random_unit_vector(cfg.cols, rng);
    CMatrix y = gemm_exact(h, x0);
    try {
        ErrorMeasurement em = measure_error(h, y, ctx, cfg.apply_wy_low_precision);
        if (em.failed) return r;
        r.rel = em.rel_err;
        r.back = em.backward_err;
        r.gram = em.gram_err;
    } catch (const NumericalError&) {
        return r;
    }
    SvdResult s = svd_jacobi(gemm_exact(h, h, true));
    r.cond2_h = std::sqrt(s.singular_values.front() / s.singular_values.back());
    r.condF_a = condF_from_sigma(s.singular_values);
    double f = 0.0;
    for (double sv : s.singular_values) f += sv * sv;
    r.fro_a = std::sqrt(f);
    r.ok = true;
    return r;
}

} // namespace detail

// Monte-Carlo condition-number sweep. Each trial draws from its own
// (seed, point << 32 | trial) stream, so the output is byte-stable across
// runs and worker counts.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const PrecisionContext ctx = cfg.context();
    const std::vector<double> targets = cfg.cond_targets();
    const int points = cfg.cond_points, trials = cfg.trials;
    const long jobs = static_cast<long>(points) * trials;
    std::vector<detail::TrialResult> results(jobs);

    auto worker = [&](int w) {
        for (long job = w; job < jobs; job += cfg.workers) {
            int p = static_cast<int>(job / trials);
            int t = static_cast<int>(job % trials);
            std::uint64_t stream =
                (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint64_t>(t);
            results[job] = detail::run_trial(cfg, ctx, targets[p], stream);
        }
    };
    if (cfg.workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(cfg.workers);
        for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    std::vector<SweepRecord> records(points);
    for (int p = 0; p < points; ++p) {
        SweepRecord& rec = records[p];
        rec.cond_target = targets[p];
        detail::CompensatedSum rel, back, gram, c2, cF, fro;
        for (int t = 0; t < trials; ++t) {
            const detail::TrialResult& r = results[static_cast<long>(p) * trials + t];
            if (!r.ok) {
                ++rec.trials_failed;
                continue;
            }
            ++rec.trials_ok;
            rel.add(r.rel);
            back.add(r.back);
            gram.add(r.gram);
            c2.add(r.cond2_h);
            cF.add(r.condF_a);
            fro.add(r.fro_a);
        }
        const double n = static_cast<double>(rec.trials_ok);
        const double qnan = std::numeric_limits<double>::quiet_NaN();
        rec.mean_rel_err = rec.trials_ok ? rel.value() / n : qnan;
        rec.mean_backward_err = rec.trials_ok ? back.value() / n : qnan;
        rec.mean_gram_err = rec.trials_ok ? gram.value() / n : qnan;
        rec.cond2_H_mean = rec.trials_ok ? c2.value() / n : qnan;
        rec.condF_A_mean = rec.trials_ok ? cF.value() / n : qnan;
        double fro_mean = rec.trials_ok ? fro.value() / n : qnan;

        if (rec.trials_ok > 1) {
            detail::CompensatedSum var;
            for (int t = 0; t < trials; ++t) {
                const detail::TrialResult& r = results[static_cast<long>(p) * trials + t];
                if (!r.ok) continue;
                double d = r.rel - rec.mean_rel_err;
                var.add(d * d);
            }
            rec.std_rel_err = std::sqrt(var.value() / (n - 1.0));
        } else {
            rec.std_rel_err = 0.0;
        }

        rec.bound_final = bound_final(cfg.rows, cfg.cols, rec.condF_A_mean, ctx);
        rec.bound_final_cond2 = bound_final_cond2(cfg.rows, rec.cond2_H_mean, ctx);
        rec.bound_classical_fro = (cfg.cols + 1) *
                                  std::sqrt(static_cast<double>(cfg.cols)) *
                                  ctx.unit_roundoff() * fro_mean;
    }
    return records;
}

inline const char* sweep_csv_header() {
    return "cond_target,cond2_H_mean,condF_A_mean,trials_ok,trials_failed,"
           "mean_rel_err,std_rel_err,mean_backward_err,mean_gram_err,"
           "bound_final,bound_final_cond2,bound_classical_fro";
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    out << sweep_csv_header() << '\n';
    char buf[512];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%ld,%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.cond_target, r.cond2_H_mean, r.condF_A_mean, r.trials_ok,
                      r.trials_failed, r.mean_rel_err, r.std_rel_err, r.mean_backward_err,
                      r.mean_gram_err, r.bound_final, r.bound_final_cond2,
                      r.bound_classical_fro);
        out << buf;
    }
}

} // namespace lpls
