#ifndef BYZGD_HARNESS_HPP
#define BYZGD_HARNESS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "byzgd/config.hpp"
#include "byzgd/csv.hpp"
#include "byzgd/simulator.hpp"

namespace byzgd::harness {

struct SweepRow {
    std::string scenario;
    std::string aggregator;
    std::string attack;
    double alpha = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t d = 0;
    uint64_t seed = 0;
    double final_dist = 0.0;
    double final_excess_risk = 0.0;
    double bound_value = 0.0;
    double runtime_ms = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows; // canonical order: axis value, then seed
};

// Builds the loss model an ExperimentConfig implies (shared across seeds).
std::unique_ptr<losses::LossModel> make_model(const ExperimentConfig& cfg);

// Runs one (config, seed) cell of robust GD end to end: generate data,
// select and apply the Byzantine behavior, run the simulator.
sim::RunResult run_single(const ExperimentConfig& cfg, const losses::LossModel& model,
                          uint64_t seed, int threads = 1);

sim::OneRoundResult run_single_one_round(const ExperimentConfig& cfg,
                                         const losses::LossModel& model,
                                         uint64_t seed, int threads = 1);

// Alpha axis: one run per (alpha, seed) with the matching theoretical bound.
SweepResult sweep_alpha(const ExperimentConfig& cfg, int threads = 1);

// (n, m) axis at fixed alpha; the clean-scaling check uses alpha = 0.
SweepResult sweep_sample_size(const ExperimentConfig& cfg, int threads = 1);

SweepResult sweep(const ExperimentConfig& cfg, int threads = 1);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Ordinary least squares on (x, y), optionally log-transformed. Requires at
// least 3 distinct x values and positive values wherever a log is applied.
RateFit rate_fit(const std::vector<double>& x, const std::vector<double>& y,
                 bool log_x, bool log_y);

// Trajectory CSV columns: run_id, round, dist_to_opt, excess_risk,
// pop_grad_norm, aggregate_deviation. Missing metrics are empty fields.
csvio::Table trajectory_table(const std::vector<std::pair<std::string, sim::RunResult>>& runs);

// Sweep CSV columns: scenario, aggregator, attack, alpha, n, m, d, seed,
// final_dist, final_excess_risk, bound_value, runtime_ms.
csvio::Table sweep_table(const SweepResult& result);

// Runs config end to end and writes the trajectory CSV under out_dir.
// Returns the written path.
std::string run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                           int threads = 1);

std::string run_sweep(const ExperimentConfig& cfg, const std::string& out_dir,
                      int threads = 1);

} // namespace byzgd::harness

#endif
