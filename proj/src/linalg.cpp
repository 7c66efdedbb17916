#include "byzgd/linalg.hpp"

#include <cmath>
#include <string>

namespace byzgd {

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != n_)
        throw InvalidArgument("Matrix::apply: dimension mismatch");
    Vector r(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += data_[i * n_ + j] * v[j];
        r[i] = s;
    }
    return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (o.n_ != n_) throw InvalidArgument("Matrix add: size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (o.n_ != n_) throw InvalidArgument("Matrix sub: size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (auto& x : data_) x *= s;
    return *this;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::fabs(x));
    return m;
}

bool Matrix::symmetric(double tol) const {
    double scale = std::max(max_abs(), 1.0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (std::fabs((*this)(i, j) - (*this)(j, i)) > tol * scale)
                return false;
    return true;
}

Vector solve_linear(Matrix a, Vector b) {
    std::size_t n = a.n();
    if (b.size() != n)
        throw InvalidArgument("solve_linear: dimension mismatch");
    double scale = std::max(a.max_abs(), 1.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::fabs(a(row, col)) > std::fabs(a(pivot, col))) pivot = row;
        if (std::fabs(a(pivot, col)) <= 1e-13 * scale)
            throw NumericalFailure("solve_linear: singular to working precision at pivot column " +
                                   std::to_string(col));
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            double f = a(row, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(row, j) -= f * a(col, j);
            b[row] -= f * b[col];
        }
    }
    Vector x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

} // namespace byzgd
