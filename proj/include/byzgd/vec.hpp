#ifndef BYZGD_VEC_HPP
#define BYZGD_VEC_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "byzgd/error.hpp"

namespace byzgd {

using Vector = std::vector<double>;

inline bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw InvalidArgument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> v) {
    return std::sqrt(dot(v, v));
}

inline Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw InvalidArgument("vector add: dimension mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw InvalidArgument("vector sub: dimension mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vector operator*(double s, const Vector& v) {
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

inline void axpy(double a, const Vector& x, Vector& y) {
    if (x.size() != y.size())
        throw InvalidArgument("axpy: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

// The m messages (gradients or parameter vectors) the master sees in one
// round. Validated on construction: equal dimensions, finite entries.
class VectorBatch {
public:
    explicit VectorBatch(std::vector<Vector> vectors)
        : vectors_(std::move(vectors)) {
        if (vectors_.empty())
            throw InvalidArgument("VectorBatch: need at least one vector");
        d_ = vectors_.front().size();
        if (d_ == 0)
            throw InvalidArgument("VectorBatch: zero-dimensional vectors");
        for (const auto& v : vectors_) {
            if (v.size() != d_)
                throw InvalidArgument("VectorBatch: inconsistent dimensions");
            if (!all_finite(v))
                throw InvalidArgument("VectorBatch: non-finite coordinate");
        }
    }

    std::size_t m() const { return vectors_.size(); }
    std::size_t d() const { return d_; }
    const Vector& operator[](std::size_t i) const { return vectors_[i]; }
    const std::vector<Vector>& vectors() const { return vectors_; }

private:
    std::vector<Vector> vectors_;
    std::size_t d_ = 0;
};

} // namespace byzgd

#endif
