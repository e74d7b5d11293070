#pragma once

/** \file
 *  \brief Small dense matrices over doubles or jets.
 *
 *  Everything here is at most 6x6, so the implementations favor determinism
 *  over speed: Gauss-Jordan with partial pivoting on the scalar part, and a
 *  fixed-sweep cyclic Jacobi eigensolver for symmetric double matrices.
 */

#include <cmath>
#include <vector>

#include "wsm/errors.hpp"
#include "wsm/jets/jet.hpp"

namespace wsm::linalg {

inline double pivot_mag(double v) { return std::abs(v); }
inline double pivot_mag(const jets::jet& v) { return std::abs(v.value()); }

template <class T>
class matrix {
public:
    matrix() = default;
    matrix(int rows, int cols, T fill) : rows_(rows), cols_(cols), d_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    T& operator()(int r, int c) { return d_[static_cast<std::size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const { return d_[static_cast<std::size_t>(r) * cols_ + c]; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> d_;
};

/// Inverse by Gauss-Jordan; pivoting on the magnitude of the scalar part.
template <class T>
matrix<T> inverse(matrix<T> a, const T& zero, const T& one) {
    const int n = a.rows();
    if (n != a.cols()) throw error(errc::linear_algebra, "inverse of non-square matrix");
    matrix<T> inv(n, n, zero);
    for (int i = 0; i < n; ++i) inv(i, i) = one;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (pivot_mag(a(r, col)) > pivot_mag(a(piv, col))) piv = r;
        if (pivot_mag(a(piv, col)) < 1e-14)
            throw error(errc::linear_algebra, "matrix numerically singular");
        if (piv != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(a(piv, c), a(col, c));
                std::swap(inv(piv, c), inv(col, c));
            }
        }
        T d = a(col, col);
        for (int c = 0; c < n; ++c) {
            a(col, c) = a(col, c) / d;
            inv(col, c) = inv(col, c) / d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            // No zero-skip here: a jet entry with zero scalar part can
            // still carry derivative coefficients that must be eliminated.
            T f = a(r, col);
            for (int c = 0; c < n; ++c) {
                a(r, c) = a(r, c) - f * a(col, c);
                inv(r, c) = inv(r, c) - f * inv(col, c);
            }
        }
    }
    return inv;
}

inline matrix<double> inverse(const matrix<double>& a) { return inverse(a, 0.0, 1.0); }

/// Eigenvalues (ascending) of a symmetric matrix by cyclic Jacobi sweeps.
std::vector<double> symmetric_eigenvalues(matrix<double> a);

/// Matrix product helper for double matrices.
matrix<double> mul(const matrix<double>& a, const matrix<double>& b);

double trace(const matrix<double>& a);

} // namespace wsm::linalg
