#ifndef BYZGD_SYNTH_DATA_HPP
#define BYZGD_SYNTH_DATA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "byzgd/losses.hpp"
#include "byzgd/vec.hpp"

namespace byzgd::data {

enum class FeatureLaw { Rademacher, StandardGaussian };

enum class GeneratorKind { RademacherRegression, GaussianRegression, Logistic };

struct DataGenConfig {
    std::size_t d = 1;
    std::size_t n = 1;       // samples per worker
    std::size_t m = 1;       // workers
    double sigma = 0.0;      // label noise std dev (ignored for logistic)
    FeatureLaw feature_law = FeatureLaw::Rademacher;
    Vector w_star;
    uint64_t seed = 0;

    void validate() const;
};

// m shards of n points each. Per-point randomness is keyed by
// (seed, worker, index), so generation is deterministic under any schedule.
struct ShardedDataset {
    std::vector<losses::Shard> shards;
    DataGenConfig config;
    GeneratorKind kind = GeneratorKind::RademacherRegression;

    std::size_t m() const { return shards.size(); }
    std::size_t n() const { return shards.empty() ? 0 : shards.front().size(); }
};

// y = x'w* + xi, x coordinates i.i.d. uniform on {-1, +1}, xi ~ N(0, sigma^2).
ShardedDataset gen_rademacher_regression(const DataGenConfig& cfg);

// Same with x coordinates i.i.d. standard normal.
ShardedDataset gen_gaussian_regression(const DataGenConfig& cfg);

// y ~ Bernoulli(sigmoid(x'w*)); sigma is ignored.
ShardedDataset gen_logistic(const DataGenConfig& cfg);

ShardedDataset generate(GeneratorKind kind, const DataGenConfig& cfg);

struct PartitionReport {
    bool pass = false;
    std::string detail;
};

// Checks shard-size equality and that no two points share a stream key
// (detected as exactly duplicated (x, y) rows across shard boundaries).
PartitionReport partition_check(const ShardedDataset& ds);

// One row per point: worker_id,index,x_1..x_d,y.
void write_dataset_csv(const ShardedDataset& ds, const std::string& path);

} // namespace byzgd::data

#endif
