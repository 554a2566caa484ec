#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "lpls/errors.hpp"

namespace lpls {

using CScalar = std::complex<double>;

enum class Rounding { NearestEven };

// Exponent policy of the emulated format. Unbounded rounds the significand
// only; Binary16Clamp additionally enforces the binary16 exponent range
// (subnormal grid below 2^-14, error instead of overflow above the largest
// finite value).
enum class RangePolicy { Unbounded, Binary16Clamp };

// Describes the emulated floating-point format: b stored fraction bits with
// an implicit leading 1, round-to-nearest-even, optional fused multiply-add.
// b = 10 with Binary16Clamp is half precision, b = 23 is single (significand
// wise), b = 52 makes every operation the native binary64 one.
struct PrecisionContext {
    int mantissa_bits = 10;
    Rounding rounding = Rounding::NearestEven;
    bool fma = true;
    RangePolicy range = RangePolicy::Unbounded;

    // Unit round-off u = 2^(-b-1).
    double unit_roundoff() const { return std::ldexp(1.0, -mantissa_bits - 1); }

    // Scaled precision eps = u/sqrt(3): RMS relative rounding error under a
    // uniformly distributed truncated part.
    double eps() const { return unit_roundoff() / std::sqrt(3.0); }

    void validate() const {
        if (mantissa_bits < 1 || mantissa_bits > 52)
            throw DimensionError("mantissa_bits must be in [1, 52]");
    }

    static PrecisionContext half(bool fused = true) {
        return PrecisionContext{10, Rounding::NearestEven, fused, RangePolicy::Binary16Clamp};
    }
};

namespace detail {

// Knuth two-sum: s + e == a + b exactly.
struct SumParts {
    double s;
    double e;
};

inline SumParts two_sum(double a, double b) {
    double s = a + b;
    double z = s - a;
    double e = (a - (s - z)) + (b - z);
    return {s, e};
}

// p + e == a*b exactly (via fused multiply-add).
inline SumParts two_prod(double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    return {p, e};
}

inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Rounds |m|*2^(shift) with unit grid spacing to an integer, breaking exact
// halves by `tie` (>0 up, <0 down, 0 ties-to-even). `scaled` must be exact
// and < 2^53 so floor and the fraction are computed without error.
inline double round_integer_grid(double scaled, int tie) {
    double fl = std::floor(scaled);
    double frac = scaled - fl;
    if (frac > 0.5) return fl + 1.0;
    if (frac < 0.5) return fl;
    if (tie > 0) return fl + 1.0;
    if (tie < 0) return fl;
    return (std::fmod(fl, 2.0) == 0.0) ? fl : fl + 1.0;
}

// Significand-only rounding: nearest value whose fraction fits in b bits,
// exponent unrestricted. `tie` resolves exact midpoints (see lp ops below).
inline double round_significand(double x, int b, int tie) {
    if (x == 0.0) return x;
    int e = 0;
    double m = std::frexp(std::abs(x), &e); // m in [0.5, 1), |x| = m * 2^e
    double scaled = std::ldexp(m, b + 1);   // in [2^b, 2^(b+1)), grid unit 1
    double g = round_integer_grid(scaled, x > 0.0 ? tie : -tie);
    return std::copysign(std::ldexp(g, e - 1 - b), x);
}

// binary16 exponent constants (independent of b so that clamped contexts
// with wider significands still make sense).
inline constexpr int kHalfEmax = 15;
inline constexpr int kHalfEmin = -14;

inline double round_binary16_clamped(double x, int b, int tie) {
    if (x == 0.0) return x;
    double ax = std::abs(x);
    if (ax < std::ldexp(1.0, kHalfEmin)) {
        // Subnormal grid: multiples of 2^(emin - b).
        double scaled = std::ldexp(ax, -kHalfEmin + b);
        double g = round_integer_grid(scaled, x > 0.0 ? tie : -tie);
        return std::copysign(std::ldexp(g, kHalfEmin - b), x);
    }
    double r = round_significand(x, b, tie);
    double max_finite = std::ldexp(2.0 - std::ldexp(1.0, -b), kHalfEmax);
    if (std::abs(r) > max_finite)
        throw OverflowError("value exceeds the binary16-clamped range");
    return r;
}

// Rounds head + residual where |residual| <= ulp(head)/2 and the sign of the
// residual is all that is needed to resolve grid midpoints. head must carry
// the correctly rounded binary64 value of the exact result.
inline double round_with_residual(double head, int residual_sign,
                                  const PrecisionContext& ctx) {
    if (!std::isfinite(head))
        throw OverflowError("operation left the binary64 carrier range");
    if (ctx.range == RangePolicy::Binary16Clamp)
        return round_binary16_clamped(head, ctx.mantissa_bits, residual_sign);
    return round_significand(head, ctx.mantissa_bits, residual_sign);
}

} // namespace detail

// Nearest representable value under ctx (round-half-to-even).
inline double round_real(double x, const PrecisionContext& ctx) {
    if (!std::isfinite(x))
        throw DomainError("round_real requires a finite input");
    if (ctx.mantissa_bits >= 52 && ctx.range == RangePolicy::Unbounded)
        return x;
    return detail::round_with_residual(x, 0, ctx);
}

inline CScalar round_complex(const CScalar& z, const PrecisionContext& ctx) {
    return {round_real(z.real(), ctx), round_real(z.imag(), ctx)};
}

// Correctly rounded emulated operations. The exact result is tracked as a
// binary64 head plus the sign of the residual, which is enough to round to
// any b <= 50 without double-rounding artifacts; b = 51, 52 fall back to the
// plain binary64 result (identity grid at b = 52).

inline double lp_add(double x, double y, const PrecisionContext& ctx) {
    auto [s, e] = detail::two_sum(x, y);
    return detail::round_with_residual(s, detail::sign_of(e), ctx);
}

inline double lp_sub(double x, double y, const PrecisionContext& ctx) {
    return lp_add(x, -y, ctx);
}

inline double lp_mul(double x, double y, const PrecisionContext& ctx) {
    auto [p, e] = detail::two_prod(x, y);
    return detail::round_with_residual(p, detail::sign_of(e), ctx);
}

inline double lp_div(double x, double y, const PrecisionContext& ctx) {
    if (y == 0.0)
        throw DomainError("lp_div: division by zero");
    double q = x / y;
    if (!std::isfinite(q))
        throw OverflowError("lp_div left the binary64 carrier range");
    double r = std::fma(-q, y, x); // exact remainder x - q*y
    int sgn = detail::sign_of(r) * detail::sign_of(y);
    return detail::round_with_residual(q, sgn, ctx);
}

inline double lp_sqrt(double x, const PrecisionContext& ctx) {
    if (x < 0.0)
        throw DomainError("lp_sqrt: negative operand");
    if (x == 0.0) return 0.0;
    double s = std::sqrt(x);
    double r = std::fma(-s, s, x); // exact residual x - s^2
    return detail::round_with_residual(s, detail::sign_of(r), ctx);
}

// Fused multiply-add: one rounding of a*b + c.
inline double lp_fma(double a, double b, double c, const PrecisionContext& ctx) {
    auto [ph, pl] = detail::two_prod(a, b);
    auto [sh, sl] = detail::two_sum(ph, c);
    auto [t, e3] = detail::two_sum(sl, pl);
    auto [head, e2] = detail::two_sum(sh, t);
    double residual = e2 + e3; // sign-exact: e2 dominates or cancels exactly
    return detail::round_with_residual(head, detail::sign_of(residual), ctx);
}

// acc + conj(a)*b under ctx. With fma each real multiply-accumulate rounds
// once (4 FMAs per complex MAC); without it the four real products round
// first and the two running additions per component round after.
inline CScalar lp_cmul_acc(const CScalar& acc, const CScalar& a, const CScalar& b,
                           const PrecisionContext& ctx) {
    const double ar = a.real(), ai = a.imag();
    const double br = b.real(), bi = b.imag();
    if (ctx.fma) {
        double re = lp_fma(ar, br, acc.real(), ctx);
        re = lp_fma(ai, bi, re, ctx);
        double im = lp_fma(ar, bi, acc.imag(), ctx);
        im = lp_fma(-ai, br, im, ctx);
        return {re, im};
    }
    double p1 = lp_mul(ar, br, ctx);
    double p2 = lp_mul(ai, bi, ctx);
    double q1 = lp_mul(ar, bi, ctx);
    double q2 = lp_mul(ai, br, ctx);
    double re = lp_add(acc.real(), p1, ctx);
    re = lp_add(re, p2, ctx);
    double im = lp_add(acc.imag(), q1, ctx);
    im = lp_sub(im, q2, ctx);
    return {re, im};
}

// acc + |z|^2 with a purely real accumulator (Gram diagonals, pivots).
inline double lp_abs2_acc(double acc, const CScalar& z, const PrecisionContext& ctx) {
    if (ctx.fma) {
        double t = lp_fma(z.real(), z.real(), acc, ctx);
        return lp_fma(z.imag(), z.imag(), t, ctx);
    }
    double p = lp_mul(z.real(), z.real(), ctx);
    double q = lp_mul(z.imag(), z.imag(), ctx);
    double t = lp_add(acc, p, ctx);
    return lp_add(t, q, ctx);
}

// acc - |z|^2 (rank-1 update of a real diagonal entry).
inline double lp_abs2_sub(double acc, const CScalar& z, const PrecisionContext& ctx) {
    if (ctx.fma) {
        double t = lp_fma(-z.real(), z.real(), acc, ctx);
        return lp_fma(-z.imag(), z.imag(), t, ctx);
    }
    double p = lp_mul(z.real(), z.real(), ctx);
    double q = lp_mul(z.imag(), z.imag(), ctx);
    double t = lp_sub(acc, p, ctx);
    return lp_sub(t, q, ctx);
}

// z / d for real positive d (triangular-solve column scalings).
inline CScalar lp_cdiv_real(const CScalar& z, double d, const PrecisionContext& ctx) {
    return {lp_div(z.real(), d, ctx), lp_div(z.imag(), d, ctx)};
}

} // namespace lpls
