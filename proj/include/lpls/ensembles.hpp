#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "lpls/cmatrix.hpp"
#include "lpls/rng.hpp"

namespace lpls {

enum class SpectrumKind { ExponentialDefault, Explicit };

// Descriptor of a RANDSVD draw: U diag(sigma) V with Haar factors and a
// prescribed spectrum. The default spectrum is geometric,
// sigma_j = cond^(-(j-1)/(n-1)), so sigma_1/sigma_n = cond exactly.
struct RandsvdSpec {
    int rows = 1;
    int cols = 1;
    double cond = 1.0;
    SpectrumKind spectrum = SpectrumKind::ExponentialDefault;
    std::vector<double> explicit_sigma;
    std::uint64_t seed = 0;

    void validate() const {
        if (rows < 1 || cols < 1) throw DimensionError("randsvd: dimensions must be positive");
        if (spectrum == SpectrumKind::ExponentialDefault) {
            if (cond < 1.0) throw DimensionError("randsvd: cond must be >= 1");
            if (std::min(rows, cols) == 1 && cond != 1.0)
                throw DimensionError("randsvd: a single singular value forces cond = 1");
        } else {
            const int n = std::min(rows, cols);
            if (static_cast<int>(explicit_sigma.size()) != n)
                throw DimensionError("randsvd: explicit spectrum needs min(rows, cols) values");
            for (int j = 0; j < n; ++j) {
                if (!(explicit_sigma[j] > 0.0))
                    throw DimensionError("randsvd: explicit spectrum must be positive");
                if (j > 0 && explicit_sigma[j] > explicit_sigma[j - 1])
                    throw DimensionError("randsvd: explicit spectrum must be non-increasing");
            }
        }
    }

    std::vector<double> sigma() const {
        validate();
        if (spectrum == SpectrumKind::Explicit) return explicit_sigma;
        const int n = std::min(rows, cols);
        std::vector<double> s(n);
        for (int j = 0; j < n; ++j)
            s[j] = n == 1 ? 1.0 : std::pow(cond, -static_cast<double>(j) / (n - 1));
        return s;
    }
};

namespace detail {

// Uniform draw from the complex Stiefel manifold: the first n columns of a
// Haar m x m unitary. Gaussian matrix, classical Gram-Schmidt applied twice;
// the positive diagonal of R that Gram-Schmidt produces is exactly the phase
// convention Haar sampling requires.
inline CMatrix stiefel(int m, int n, RngStream& rng) {
    CMatrix q(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) q(i, j) = complex_gaussian(rng);
    for (int j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                CScalar proj{0.0, 0.0};
                for (int i = 0; i < m; ++i) proj += std::conj(q(i, k)) * q(i, j);
                for (int i = 0; i < m; ++i) q(i, j) -= proj * q(i, k);
            }
        }
        double nrm = 0.0;
        for (int i = 0; i < m; ++i) nrm += std::norm(q(i, j));
        nrm = std::sqrt(nrm);
        for (int i = 0; i < m; ++i) q(i, j) /= nrm;
    }
    return q;
}

} // namespace detail

// Haar-distributed n x n unitary.
inline CMatrix haar_unitary(int n, RngStream& rng) {
    if (n < 1) throw DimensionError("haar_unitary: n must be positive");
    return detail::stiefel(n, n, rng);
}

// H = U diag(sigma) V with U the first min(M,N) columns of a Haar M x M
// unitary and V the first min(M,N) rows of an independent Haar N x N one.
inline CMatrix randsvd(const RandsvdSpec& spec, RngStream& rng) {
    const std::vector<double> s = spec.sigma();
    const int n = static_cast<int>(s.size());
    CMatrix u = detail::stiefel(spec.rows, n, rng);
    CMatrix vh = detail::stiefel(spec.cols, n, rng); // V = vh^H row block
    CMatrix h(spec.rows, spec.cols);
    for (int i = 0; i < spec.rows; ++i)
        for (int j = 0; j < spec.cols; ++j) {
            CScalar acc{0.0, 0.0};
            for (int k = 0; k < n; ++k) acc += u(i, k) * s[k] * std::conj(vh(j, k));
            h(i, j) = acc;
        }
    return h;
}

inline CMatrix randsvd(const RandsvdSpec& spec) {
    RngStream rng(spec.seed, 0);
    return randsvd(spec, rng);
}

// Complex Gaussian vector normalized to unit Euclidean norm (N x 1).
inline CMatrix random_unit_vector(int n, RngStream& rng) {
    if (n < 1) throw DimensionError("random_unit_vector: n must be positive");
    CMatrix x(n, 1);
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) {
        x(i, 0) = complex_gaussian(rng);
        nrm += std::norm(x(i, 0));
    }
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n; ++i) x(i, 0) /= nrm;
    return x;
}

} // namespace lpls
