#ifndef BYZGD_LINALG_HPP
#define BYZGD_LINALG_HPP

#include <cstddef>

#include "byzgd/vec.hpp"

namespace byzgd {

// Small dense square matrix, row-major. Desk-scale only (d <= a few hundred),
// so no blocking or factorization caching.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0)
        : n_(n), data_(n * n, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t n() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    Vector apply(const Vector& v) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(double s);

    double max_abs() const;
    bool symmetric(double tol = 1e-12) const;

private:
    std::size_t n_ = 0;
    Vector data_;
};

inline Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

// Solves A x = b by Gaussian elimination with partial pivoting. Throws
// NumericalFailure naming the pivot column when A is singular to working
// precision.
Vector solve_linear(Matrix a, Vector b);

} // namespace byzgd

#endif
