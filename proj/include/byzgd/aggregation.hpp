#ifndef BYZGD_AGGREGATION_HPP
#define BYZGD_AGGREGATION_HPP

#include <span>
#include <string>

#include "byzgd/vec.hpp"

namespace byzgd::agg {

enum class RuleKind { Mean, CoordinateMedian, CoordinateTrimmedMean };

// The aggregation rule applied by the master each round. For the trimmed
// mean, beta in [0, 1/2) and floor(beta*m) values are removed per side.
struct AggregationRule {
    RuleKind kind = RuleKind::Mean;
    double beta = 0.0; // trimmed mean only

    static AggregationRule mean() { return {RuleKind::Mean, 0.0}; }
    static AggregationRule median() { return {RuleKind::CoordinateMedian, 0.0}; }
    static AggregationRule trimmed_mean(double beta) {
        return {RuleKind::CoordinateTrimmedMean, beta};
    }

    std::string name() const;
};

// Median of m finite scalars: middle order statistic for odd m, mean of the
// two middle order statistics for even m.
double scalar_median(std::span<const double> values);

// Sorts, removes floor(beta*m) values from each end, averages the rest.
double scalar_trimmed_mean(std::span<const double> values, double beta);

Vector coordinate_median(const VectorBatch& batch);
Vector coordinate_trimmed_mean(const VectorBatch& batch, double beta);
Vector mean(const VectorBatch& batch);

Vector aggregate(const AggregationRule& rule, const VectorBatch& batch);

} // namespace byzgd::agg

#endif
