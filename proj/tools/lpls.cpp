// Command-line front end: RANDSVD/Haar matrix generation, per-matrix bound
// reports, single solves with error measurement, Monte-Carlo condition-number
// sweeps (CSV + optional SVG), and the statistical selftest.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpls/bounds.hpp"
#include "lpls/cmat_io.hpp"
#include "lpls/ensembles.hpp"
#include "lpls/pipeline.hpp"
#include "lpls/selftest.hpp"
#include "lpls/svg.hpp"
#include "lpls/sweep.hpp"

namespace {

void require_finite(const lpls::CMatrix& a, const std::string& what) {
    for (const auto& z : a.data())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw lpls::DimensionError(what + " contains non-finite entries");
}

std::vector<double> parse_sigma_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw lpls::DimensionError("--sigma: cannot parse '" + tok + "'");
        }
    }
    if (out.empty()) throw lpls::DimensionError("--sigma: empty list");
    return out;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw lpls::ParseError("cannot open '" + path + "' for writing");
    f << content;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct GenArgs {
    int rows = 4, cols = 4;
    double cond = 1.0;
    std::string sigma_csv;
    bool haar = false;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    lpls::RngStream rng(a.seed, 0);
    lpls::CMatrix h = [&] {
        if (a.haar) return lpls::haar_unitary(a.rows, rng);
        lpls::RandsvdSpec spec{a.rows, a.cols, a.cond};
        spec.seed = a.seed;
        if (!a.sigma_csv.empty()) {
            spec.spectrum = lpls::SpectrumKind::Explicit;
            spec.explicit_sigma = parse_sigma_list(a.sigma_csv);
        }
        return lpls::randsvd(spec, rng);
    }();
    std::ostringstream os;
    lpls::write_cmat(os, h);
    emit(a.out, os.str());
    return 0;
}

struct BoundArgs {
    std::string matrix;
    int bits = 10;
    bool fma = true;
    bool csv = false;
};

int cmd_bound(const BoundArgs& a) {
    lpls::PrecisionContext ctx{a.bits, lpls::Rounding::NearestEven, a.fma,
                               lpls::RangePolicy::Unbounded};
    ctx.validate();
    lpls::CMatrix h = lpls::read_cmat(a.matrix);
    require_finite(h, "matrix");
    lpls::BoundReport r = lpls::make_bound_report(h, ctx);

    // Elementwise classical bound needs the exact factorization.
    lpls::CMatrix a_exact = lpls::gemm_exact(h, h, true);
    lpls::PrecisionContext exact{52};
    lpls::ClassicalBound cb =
        lpls::bound_classical(a_exact, lpls::cholesky_lp(a_exact, exact), ctx);
    double elem_max = lpls::max_abs(cb.elementwise);
    double chol_sym = 2.0 * r.cholesky_bound;

    if (a.csv) {
        std::cout << "rows,cols,mantissa_bits,u,eps,cond2_H,condF_A,"
                     "classical_elementwise_max,classical_fro,classical_spectral,"
                     "gram_bound,cholesky_bound,cholesky_bound_sym,final_bound,"
                     "final_bound_cond2\n";
        std::cout << h.rows() << ',' << h.cols() << ',' << a.bits << ','
                  << format_value(r.u) << ',' << format_value(r.eps) << ','
                  << format_value(r.cond2_H) << ',' << format_value(r.condF_A) << ','
                  << format_value(elem_max) << ',' << format_value(r.classical_fro) << ','
                  << format_value(r.classical_spectral) << ','
                  << format_value(r.gram_bound) << ',' << format_value(r.cholesky_bound)
                  << ',' << format_value(chol_sym) << ',' << format_value(r.final_bound)
                  << ',' << format_value(r.final_bound_cond2_form) << '\n';
        return 0;
    }
    std::cout << "matrix:                    " << h.rows() << " x " << h.cols() << '\n'
              << "mantissa_bits:             " << a.bits << (a.fma ? " (fma)" : "") << '\n'
              << "u:                         " << format_value(r.u) << '\n'
              << "eps:                       " << format_value(r.eps) << '\n'
              << "cond2_H:                   " << format_value(r.cond2_H) << '\n'
              << "condF_A:                   " << format_value(r.condF_A) << '\n'
              << "classical_elementwise_max: " << format_value(elem_max) << '\n'
              << "classical_fro:             " << format_value(r.classical_fro) << '\n'
              << "classical_spectral:        " << format_value(r.classical_spectral) << '\n'
              << "gram_bound:                " << format_value(r.gram_bound) << '\n'
              << "cholesky_bound:            " << format_value(r.cholesky_bound) << '\n'
              << "cholesky_bound_sym:        " << format_value(chol_sym) << '\n'
              << "final_bound:               " << format_value(r.final_bound) << '\n'
              << "final_bound_cond2:         " << format_value(r.final_bound_cond2_form)
              << '\n';
    return 0;
}

struct SolveArgs {
    std::string matrix;
    std::string rhs;
    bool random_rhs = false;
    std::uint64_t rhs_seed = 0;
    int bits = 10;
    bool fma = true;
    bool apply_wy_in_lp = true;
};

int cmd_solve(const SolveArgs& a) {
    lpls::PrecisionContext ctx{a.bits, lpls::Rounding::NearestEven, a.fma,
                               lpls::RangePolicy::Unbounded};
    ctx.validate();
    lpls::CMatrix h = lpls::read_cmat(a.matrix);
    require_finite(h, "matrix");
    lpls::CMatrix y = [&] {
        if (!a.rhs.empty()) {
            lpls::CMatrix r = lpls::read_cmat(a.rhs);
            if (r.cols() != 1 || r.rows() != h.rows())
                throw lpls::DimensionError("rhs must be " + std::to_string(h.rows()) +
                                           " x 1");
            return r;
        }
        lpls::RngStream rng(a.rhs_seed, 0);
        lpls::CMatrix x0 = lpls::random_unit_vector(h.cols(), rng);
        return lpls::gemm_exact(h, x0); // consistent right-hand side Y = H x0
    }();
    require_finite(y, "rhs");

    lpls::ErrorMeasurement em = lpls::measure_error(h, y, ctx, a.apply_wy_in_lp);
    std::cout << "rel_err:      " << format_value(em.rel_err) << '\n'
              << "backward_err: " << format_value(em.backward_err) << '\n'
              << "gram_err:     " << format_value(em.gram_err) << '\n'
              << "failed:       " << (em.failed ? "yes" : "no") << '\n'
              << "stage:        " << lpls::to_string(em.failure_stage) << '\n';
    if (em.failed) return 3;

    lpls::LsSolution sol = lpls::solve_lp(h, y, ctx, a.apply_wy_in_lp);
    if (!sol.failed && sol.X) {
        std::cout << "X:\n";
        for (int i = 0; i < sol.X->rows(); ++i)
            std::cout << "  " << format_value((*sol.X)(i, 0).real()) << ' '
                      << format_value((*sol.X)(i, 0).imag()) << '\n';
    }
    return 0;
}

struct SweepArgs {
    lpls::SweepConfig cfg;
    std::string out_csv;
    std::string out_svg;
};

int cmd_sweep(const SweepArgs& a) {
    std::vector<lpls::SweepRecord> recs = lpls::run_sweep(a.cfg);
    std::ostringstream os;
    lpls::write_sweep_csv(os, recs);
    emit(a.out_csv, os.str());
    if (!a.out_svg.empty()) {
        char title[128];
        std::snprintf(title, sizeof title, "%d x %d, b = %d, %d trials/point",
                      a.cfg.rows, a.cfg.cols, a.cfg.mantissa_bits, a.cfg.trials);
        std::ostringstream sv;
        lpls::write_sweep_svg(sv, recs, title);
        emit(a.out_svg, sv.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-precision Cholesky least-squares solver and round-off "
                 "error bound harness"};
    app.require_subcommand(1);
    int rc = 0;

    GenArgs gen;
    auto* sg = app.add_subcommand("gen", "Generate a RANDSVD draw or Haar unitary (CMAT)");
    sg->add_option("--rows", gen.rows, "Rows M")->required();
    sg->add_option("--cols", gen.cols, "Cols N (defaults to rows)");
    sg->add_option("--cond", gen.cond, "Target cond2(H), geometric spectrum");
    sg->add_option("--sigma", gen.sigma_csv, "Explicit spectrum, comma separated");
    sg->add_flag("--haar", gen.haar, "Emit a Haar unitary of size rows x rows");
    sg->add_option("--seed", gen.seed, "RNG seed (default 0)");
    sg->add_option("-o,--out", gen.out, "Output path (default stdout)");
    sg->callback([&] {
        if (sg->count("--cols") == 0) gen.cols = gen.rows;
        rc = cmd_gen(gen);
    });

    BoundArgs bound;
    auto* sb = app.add_subcommand("bound", "Evaluate every bound for one matrix");
    sb->add_option("matrix", bound.matrix, "CMAT file with H")->required();
    sb->add_option("--mantissa-bits", bound.bits, "Fraction bits b (default 10)");
    sb->add_flag("--fma,!--no-fma", bound.fma, "Fused multiply-add model (default on)");
    sb->add_flag("--csv", bound.csv, "Emit one CSV row instead of text");
    sb->callback([&] { rc = cmd_bound(bound); });

    SolveArgs solve;
    auto* ss = app.add_subcommand("solve", "Run the emulated solve and measure errors");
    ss->add_option("matrix", solve.matrix, "CMAT file with H")->required();
    ss->add_option("rhs", solve.rhs, "CMAT file with Y (M x 1)");
    auto* rr = ss->add_option("--random-rhs", solve.rhs_seed,
                              "Generate Y = H x0 from this seed instead of a file");
    ss->add_option("--mantissa-bits", solve.bits, "Fraction bits b (default 10)");
    ss->add_flag("--fma,!--no-fma", solve.fma, "Fused multiply-add model (default on)");
    ss->add_flag("--apply-wy-in-lp,!--no-apply-wy-in-lp", solve.apply_wy_in_lp,
                 "Apply W Y under the emulated precision (default on)");
    ss->callback([&] {
        solve.random_rhs = rr->count() > 0;
        if (solve.rhs.empty() && !solve.random_rhs)
            throw CLI::ValidationError("solve", "provide a rhs file or --random-rhs");
        rc = cmd_solve(solve);
    });

    SweepArgs sweep;
    auto* sw = app.add_subcommand("sweep", "Monte-Carlo condition-number sweep (CSV/SVG)");
    sw->add_option("--rows", sweep.cfg.rows, "Rows M")->required();
    sw->add_option("--cols", sweep.cfg.cols, "Cols N")->required();
    sw->add_option("--cond-min", sweep.cfg.cond_min, "Lowest cond2(H) target (default 1)");
    sw->add_option("--cond-max", sweep.cfg.cond_max,
                   "Highest cond2(H) target (default 100)");
    sw->add_option("--cond-points", sweep.cfg.cond_points,
                   "Log-spaced targets (default 20)");
    sw->add_option("--trials", sweep.cfg.trials, "Trials per point (default 100)");
    sw->add_option("--mantissa-bits", sweep.cfg.mantissa_bits,
                   "Fraction bits b (default 10)");
    sw->add_flag("--fma,!--no-fma", sweep.cfg.fma, "Fused multiply-add model (default on)");
    sw->add_flag("--apply-wy-in-lp,!--no-apply-wy-in-lp",
                 sweep.cfg.apply_wy_low_precision,
                 "Apply W Y under the emulated precision (default on)");
    sw->add_option("--seed", sweep.cfg.seed, "RNG seed (default 0)");
    sw->add_option("--workers", sweep.cfg.workers, "Worker threads (default 1)");
    sw->add_option("-o,--out", sweep.out_csv, "CSV output path (default stdout)");
    sw->add_option("--svg", sweep.out_svg, "Optional SVG plot path");
    sw->callback([&] { rc = cmd_sweep(sweep); });

    auto* st = app.add_subcommand("selftest", "Run the statistical invariant suite");
    st->callback([&] { rc = lpls::run_selftest(std::cout) ? 0 : 3; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const lpls::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const lpls::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
