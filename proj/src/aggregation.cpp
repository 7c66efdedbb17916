#include "byzgd/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace byzgd::agg {

namespace {

void check_values(std::span<const double> values) {
    if (values.empty())
        throw InvalidArgument("aggregation: empty input");
    for (double v : values)
        if (!std::isfinite(v))
            throw InvalidArgument("aggregation: non-finite value");
}

void check_beta(double beta, std::size_t m) {
    if (!(beta >= 0.0 && beta < 0.5))
        throw InvalidArgument("trimmed mean: beta must be in [0, 1/2)");
    std::size_t k = static_cast<std::size_t>(beta * static_cast<double>(m));
    if (m < 2 * k + 1)
        throw InvalidArgument("trimmed mean: all elements trimmed");
}

} // namespace

std::string AggregationRule::name() const {
    switch (kind) {
        case RuleKind::Mean: return "mean";
        case RuleKind::CoordinateMedian: return "median";
        case RuleKind::CoordinateTrimmedMean:
            return "trimmed_mean(" + std::to_string(beta) + ")";
    }
    return "unknown";
}

double scalar_median(std::span<const double> values) {
    check_values(values);
    std::vector<double> v(values.begin(), values.end());
    std::size_t m = v.size();
    std::size_t mid = m / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double upper = v[mid];
    if (m % 2 == 1) return upper;
    double lower = *std::max_element(v.begin(), v.begin() + mid);
    return (lower + upper) / 2.0;
}

double scalar_trimmed_mean(std::span<const double> values, double beta) {
    check_values(values);
    std::size_t m = values.size();
    check_beta(beta, m);
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    std::size_t k = static_cast<std::size_t>(beta * static_cast<double>(m));
    double sum = 0.0;
    for (std::size_t i = k; i < m - k; ++i) sum += v[i];
    return sum / static_cast<double>(m - 2 * k);
}

namespace {

// Per-coordinate application of a scalar reducer over the batch.
template <typename Fn>
Vector per_coordinate(const VectorBatch& batch, Fn reduce) {
    Vector out(batch.d());
    std::vector<double> column(batch.m());
    for (std::size_t k = 0; k < batch.d(); ++k) {
        for (std::size_t i = 0; i < batch.m(); ++i) column[i] = batch[i][k];
        out[k] = reduce(column);
    }
    return out;
}

} // namespace

Vector coordinate_median(const VectorBatch& batch) {
    return per_coordinate(batch, [](std::span<const double> c) { return scalar_median(c); });
}

Vector coordinate_trimmed_mean(const VectorBatch& batch, double beta) {
    check_beta(beta, batch.m());
    return per_coordinate(batch, [beta](std::span<const double> c) {
        return scalar_trimmed_mean(c, beta);
    });
}

Vector mean(const VectorBatch& batch) {
    // Summed per coordinate in sorted order so that mean and trimmed mean
    // with beta = 0 agree bitwise.
    return per_coordinate(batch, [](std::span<const double> c) {
        return scalar_trimmed_mean(c, 0.0);
    });
}

Vector aggregate(const AggregationRule& rule, const VectorBatch& batch) {
    switch (rule.kind) {
        case RuleKind::Mean: return mean(batch);
        case RuleKind::CoordinateMedian: return coordinate_median(batch);
        case RuleKind::CoordinateTrimmedMean:
            return coordinate_trimmed_mean(batch, rule.beta);
    }
    throw InvalidArgument("aggregate: unknown rule");
}

} // namespace byzgd::agg
