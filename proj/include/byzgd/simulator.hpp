#ifndef BYZGD_SIMULATOR_HPP
#define BYZGD_SIMULATOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "byzgd/adversary.hpp"
#include "byzgd/aggregation.hpp"
#include "byzgd/losses.hpp"
#include "byzgd/synth_data.hpp"
#include "byzgd/vec.hpp"

namespace byzgd::sim {

struct GdSettings {
    double eta = 0.0;            // 0 means 1/L_F
    std::size_t rounds = 1;      // T
    double domain_radius = 0.0;  // 0 means 10 * ||w*|| (or unbounded without w*)
    Vector w0;                   // empty means origin
    double minibatch_fraction = 0.0; // 0 = full batch; else per-round fraction
};

struct RoundRecord {
    std::size_t round = 0;
    std::optional<double> dist_to_opt;
    std::optional<double> excess_risk;
    std::optional<double> pop_grad_norm;
    std::optional<double> aggregate_deviation;
};

struct RunResult {
    std::vector<RoundRecord> trajectory; // length T+1, round 0 included
    Vector final_w;
    std::string config_fingerprint;
};

// Radial projection onto the l2 ball of radius r (no-op when r <= 0).
Vector project_l2_ball(const Vector& w, double r);

struct Metrics {
    std::optional<double> dist_to_opt;
    std::optional<double> excess_risk;
    std::optional<double> pop_grad_norm;
};

Metrics compute_metrics(const losses::LossModel& model, const Vector& w);

// One synchronous master-worker run of robust distributed gradient descent.
// Data-level attacks corrupt Byzantine shards before round 0; message-level
// attacks forge the per-round messages. Worker computations within a round
// run in parallel when threads > 1; all randomness is keyed by
// (seed, worker, round), so the result is schedule-independent.
RunResult run_robust_gd(const losses::LossModel& model,
                        const data::ShardedDataset& dataset,
                        const attack::ByzantineAssignment& assignment,
                        const attack::AttackSpec& attack,
                        const agg::AggregationRule& rule,
                        const GdSettings& settings, uint64_t seed,
                        int threads = 1);

struct OneRoundSettings {
    losses::ErmSettings erm;       // used when no closed form is available
    bool force_iterative = false;  // ignore the quadratic closed form
};

struct OneRoundResult {
    Vector final_w;
    std::vector<Vector> per_worker_erms;
};

// Robust one-round aggregation: each honest worker sends its local ERM
// (closed form when the shard risk is quadratic, iterative GD otherwise);
// the master takes the coordinate-wise median.
OneRoundResult run_one_round(const losses::LossModel& model,
                             const data::ShardedDataset& dataset,
                             const attack::ByzantineAssignment& assignment,
                             const attack::AttackSpec& attack,
                             const OneRoundSettings& settings, uint64_t seed,
                             int threads = 1);

} // namespace byzgd::sim

#endif
