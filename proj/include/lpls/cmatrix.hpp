#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "lpls/errors.hpp"
#include "lpls/precision.hpp"

namespace lpls {

// Dense complex matrix, row-major, binary64 entries. Used for channel
// matrices, Gram matrices, triangular factors, weights and right-hand sides
// alike; vectors are N x 1 matrices.
class CMatrix {
public:
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 1 || cols < 1)
            throw DimensionError("CMatrix dimensions must be positive");
        data_.assign(static_cast<std::size_t>(rows) * cols, CScalar{0.0, 0.0});
    }

    static CMatrix identity(int n) {
        CMatrix I(n, n);
        for (int i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    CScalar& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const CScalar& operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    const std::vector<CScalar>& data() const { return data_; }

    bool same_shape(const CMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
    int rows_;
    int cols_;
    std::vector<CScalar> data_;
};

inline CMatrix conj_transpose(const CMatrix& a) {
    CMatrix r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (!a.same_shape(b)) throw DimensionError("matrix sum: shape mismatch");
    CMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (!a.same_shape(b)) throw DimensionError("matrix difference: shape mismatch");
    CMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

inline CMatrix operator*(double s, const CMatrix& a) {
    CMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

// Exact (binary64) product; with conjugate_transpose_a the first factor is
// read as A^H without materializing it.
inline CMatrix gemm_exact(const CMatrix& a, const CMatrix& b,
                          bool conjugate_transpose_a = false) {
    const int m = conjugate_transpose_a ? a.cols() : a.rows();
    const int k = conjugate_transpose_a ? a.rows() : a.cols();
    if (k != b.rows()) throw DimensionError("gemm_exact: inner dimensions disagree");
    CMatrix r(m, b.cols());
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            CScalar acc{0.0, 0.0};
            for (int l = 0; l < k; ++l) {
                CScalar ail = conjugate_transpose_a ? std::conj(a(l, i)) : a(i, l);
                acc += ail * b(l, j);
            }
            r(i, j) = acc;
        }
    }
    return r;
}

inline double frobenius_norm(const CMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

inline double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

// Euclidean norm of an N x 1 (or 1 x N) matrix.
inline double vec_norm2(const CMatrix& v) { return frobenius_norm(v); }

inline bool is_hermitian(const CMatrix& a, double rel_tol = 1e-12) {
    if (a.rows() != a.cols()) return false;
    double scale = frobenius_norm(a);
    double defect = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) defect += std::norm(a(i, j) - std::conj(a(j, i)));
    return std::sqrt(defect) <= rel_tol * scale;
}

// Elementwise |A| as a real-valued complex matrix.
inline CMatrix elementwise_abs(const CMatrix& a) {
    CMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = std::abs(a(i, j));
    return r;
}

} // namespace lpls
