#ifndef BYZGD_CONFIG_HPP
#define BYZGD_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "byzgd/adversary.hpp"
#include "byzgd/aggregation.hpp"
#include "byzgd/simulator.hpp"
#include "byzgd/synth_data.hpp"

namespace byzgd::harness {

enum class SweepAxis { None, Alpha, SampleSize };

// One fully described experiment: data generator, attack, aggregation rule,
// GD (or one-round) settings, seeds, and an optional sweep axis. Parsed from
// a JSON config file; unknown keys are an error.
struct ExperimentConfig {
    std::string scenario = "experiment";
    data::GeneratorKind generator = data::GeneratorKind::RademacherRegression;
    data::DataGenConfig data;
    attack::AttackSpec attack;
    double alpha = 0.0;
    agg::AggregationRule rule;
    sim::GdSettings gd;
    bool one_round = false;
    losses::ErmSettings erm;
    std::vector<uint64_t> seeds;

    SweepAxis sweep_axis = SweepAxis::None;
    std::vector<double> alpha_values;                          // Alpha axis
    std::vector<std::pair<std::size_t, std::size_t>> nm_values; // SampleSize axis

    void validate() const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

} // namespace byzgd::harness

#endif
