#include "byzgd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "byzgd/robust_stats.hpp"

namespace byzgd::harness {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double domain_radius(const ExperimentConfig& cfg) {
    if (cfg.gd.domain_radius > 0.0) return cfg.gd.domain_radius;
    return 10.0 * norm2(cfg.data.w_star);
}

// Deviation bound for the configured rule, or NaN when no tail constants are
// known for the loss (logistic) or the rule is the plain mean.
double bound_for(const ExperimentConfig& cfg, const losses::LossModel& model,
                 double alpha, std::size_t n, std::size_t m) {
    if (cfg.rule.kind == agg::RuleKind::Mean) return kNan;
    if (cfg.generator == data::GeneratorKind::Logistic) return kNan;

    double r = domain_radius(cfg);
    double r_max = r + norm2(cfg.data.w_star); // max ||w - w*|| over the ball
    double d = static_cast<double>(cfg.data.d);
    double s2 = cfg.data.sigma * cfg.data.sigma;

    stats::BoundInputs in;
    in.alpha = alpha;
    in.n = n;
    in.m = m;
    in.d = cfg.data.d;
    in.l_hat = model.smoothness().stacked_lipschitz;
    in.diameter = 2.0 * r;
    if (cfg.generator == data::GeneratorKind::RademacherRegression) {
        in.tail.variance_bound = std::sqrt((d - 1.0) * r_max * r_max + d * s2);
        in.tail.skewness_bound = 480.0;
    } else {
        in.tail.variance_bound = std::sqrt((d + 1.0) * r_max * r_max + d * s2);
        in.tail.skewness_bound = 429.0;
    }
    in.tail.sub_exp = std::sqrt(s2 + r_max * r_max);

    try {
        if (cfg.rule.kind == agg::RuleKind::CoordinateMedian)
            return stats::median_bound_delta(in).value;
        in.beta = cfg.rule.beta;
        return stats::trimmed_bound_delta(in).value;
    } catch (const InvalidArgument&) {
        return kNan;
    }
}

SweepRow run_cell(const ExperimentConfig& cfg, const losses::LossModel& model,
                  uint64_t seed, int threads) {
    SweepRow row;
    row.scenario = cfg.scenario;
    row.aggregator = cfg.one_round ? "one_round_median" : cfg.rule.name();
    row.attack = cfg.attack.name();
    row.alpha = cfg.alpha;
    row.n = cfg.data.n;
    row.m = cfg.data.m;
    row.d = cfg.data.d;
    row.seed = seed;

    auto started = std::chrono::steady_clock::now();
    Vector final_w;
    if (cfg.one_round) {
        final_w = run_single_one_round(cfg, model, seed, threads).final_w;
    } else {
        final_w = run_single(cfg, model, seed, threads).final_w;
    }
    auto elapsed = std::chrono::steady_clock::now() - started;
    row.runtime_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed)
            .count();

    sim::Metrics metrics = sim::compute_metrics(model, final_w);
    row.final_dist = metrics.dist_to_opt.value_or(kNan);
    row.final_excess_risk = metrics.excess_risk.value_or(kNan);
    row.bound_value = bound_for(cfg, model, cfg.alpha, cfg.data.n, cfg.data.m);
    return row;
}

} // namespace

std::unique_ptr<losses::LossModel> make_model(const ExperimentConfig& cfg) {
    switch (cfg.generator) {
        case data::GeneratorKind::RademacherRegression:
        case data::GeneratorKind::GaussianRegression:
            return std::make_unique<losses::LinearRegressionLoss>(cfg.data.w_star,
                                                                  cfg.data.sigma);
        case data::GeneratorKind::Logistic:
            return std::make_unique<losses::LogisticLoss>(
                cfg.data.w_star,
                cfg.data.feature_law == data::FeatureLaw::Rademacher ? 0 : 1,
                cfg.data.seed);
    }
    throw InvalidArgument("make_model: unknown generator");
}

sim::RunResult run_single(const ExperimentConfig& cfg, const losses::LossModel& model,
                          uint64_t seed, int threads) {
    data::DataGenConfig dc = cfg.data;
    dc.seed = seed;
    auto dataset = data::generate(cfg.generator, dc);
    auto assignment = attack::select_byzantine_set(dc.m, cfg.alpha, seed);
    auto result = sim::run_robust_gd(model, dataset, assignment, cfg.attack, cfg.rule,
                                     cfg.gd, seed, threads);
    result.config_fingerprint = cfg.scenario + "_seed" + std::to_string(seed);
    return result;
}

sim::OneRoundResult run_single_one_round(const ExperimentConfig& cfg,
                                         const losses::LossModel& model,
                                         uint64_t seed, int threads) {
    data::DataGenConfig dc = cfg.data;
    dc.seed = seed;
    auto dataset = data::generate(cfg.generator, dc);
    auto assignment = attack::select_byzantine_set(dc.m, cfg.alpha, seed);
    sim::OneRoundSettings settings;
    settings.erm = cfg.erm;
    return sim::run_one_round(model, dataset, assignment, cfg.attack, settings, seed,
                              threads);
}

SweepResult sweep_alpha(const ExperimentConfig& cfg, int threads) {
    if (cfg.alpha_values.empty())
        throw InvalidArgument("sweep_alpha: no alpha values");
    auto model = make_model(cfg);
    SweepResult result;
    for (double alpha : cfg.alpha_values) {
        ExperimentConfig cell = cfg;
        cell.alpha = alpha;
        cell.validate();
        for (uint64_t seed : cfg.seeds)
            result.rows.push_back(run_cell(cell, *model, seed, threads));
    }
    return result;
}

SweepResult sweep_sample_size(const ExperimentConfig& cfg, int threads) {
    if (cfg.nm_values.empty())
        throw InvalidArgument("sweep_sample_size: no (n, m) values");
    auto model = make_model(cfg);
    SweepResult result;
    for (auto [n, m] : cfg.nm_values) {
        ExperimentConfig cell = cfg;
        cell.data.n = n;
        cell.data.m = m;
        cell.validate();
        for (uint64_t seed : cfg.seeds)
            result.rows.push_back(run_cell(cell, *model, seed, threads));
    }
    return result;
}

SweepResult sweep(const ExperimentConfig& cfg, int threads) {
    switch (cfg.sweep_axis) {
        case SweepAxis::Alpha: return sweep_alpha(cfg, threads);
        case SweepAxis::SampleSize: return sweep_sample_size(cfg, threads);
        case SweepAxis::None: break;
    }
    auto model = make_model(cfg);
    SweepResult result;
    for (uint64_t seed : cfg.seeds)
        result.rows.push_back(run_cell(cfg, *model, seed, threads));
    return result;
}

RateFit rate_fit(const std::vector<double>& x, const std::vector<double>& y,
                 bool log_x, bool log_y) {
    if (x.size() != y.size())
        throw InvalidArgument("rate_fit: x and y sizes differ");
    std::size_t n = x.size();
    std::vector<double> u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (log_x && !(x[i] > 0.0))
            throw InvalidArgument("rate_fit: nonpositive x under log transform");
        if (log_y && !(y[i] > 0.0))
            throw InvalidArgument("rate_fit: nonpositive y under log transform");
        u[i] = log_x ? std::log(x[i]) : x[i];
        v[i] = log_y ? std::log(y[i]) : y[i];
    }
    std::vector<double> distinct = u;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw InvalidArgument("rate_fit: need at least 3 distinct x values");

    double mu = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mu += u[i]; mv += v[i]; }
    mu /= static_cast<double>(n);
    mv /= static_cast<double>(n);
    double suu = 0.0, suv = 0.0, svv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        suu += (u[i] - mu) * (u[i] - mu);
        suv += (u[i] - mu) * (v[i] - mv);
        svv += (v[i] - mv) * (v[i] - mv);
    }
    RateFit fit;
    fit.slope = suv / suu;
    fit.intercept = mv - fit.slope * mu;
    fit.r_squared = svv > 0.0 ? (suv * suv) / (suu * svv) : 1.0;
    return fit;
}

csvio::Table trajectory_table(
    const std::vector<std::pair<std::string, sim::RunResult>>& runs) {
    csvio::Table table;
    table.header = {"run_id", "round", "dist_to_opt", "excess_risk",
                    "pop_grad_norm", "aggregate_deviation"};
    for (const auto& [run_id, result] : runs) {
        for (const auto& rec : result.trajectory) {
            table.rows.push_back({run_id, std::to_string(rec.round),
                                  csvio::cell(rec.dist_to_opt),
                                  csvio::cell(rec.excess_risk),
                                  csvio::cell(rec.pop_grad_norm),
                                  csvio::cell(rec.aggregate_deviation)});
        }
    }
    return table;
}

csvio::Table sweep_table(const SweepResult& result) {
    csvio::Table table;
    table.header = {"scenario", "aggregator", "attack", "alpha", "n", "m", "d",
                    "seed", "final_dist", "final_excess_risk", "bound_value",
                    "runtime_ms"};
    for (const auto& row : result.rows) {
        table.rows.push_back({row.scenario, row.aggregator, row.attack,
                              csvio::cell(row.alpha), std::to_string(row.n),
                              std::to_string(row.m), std::to_string(row.d),
                              std::to_string(row.seed), csvio::cell(row.final_dist),
                              csvio::cell(row.final_excess_risk),
                              csvio::cell(row.bound_value),
                              csvio::cell(row.runtime_ms)});
    }
    return table;
}

std::string run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                           int threads) {
    auto model = make_model(cfg);
    std::vector<std::pair<std::string, sim::RunResult>> runs;
    for (uint64_t seed : cfg.seeds) {
        std::string run_id = cfg.scenario + "_seed" + std::to_string(seed);
        if (cfg.one_round) {
            auto one = run_single_one_round(cfg, *model, seed, threads);
            sim::RunResult result;
            sim::Metrics metrics = sim::compute_metrics(*model, one.final_w);
            sim::RoundRecord rec;
            rec.round = 0;
            rec.dist_to_opt = metrics.dist_to_opt;
            rec.excess_risk = metrics.excess_risk;
            rec.pop_grad_norm = metrics.pop_grad_norm;
            result.trajectory.push_back(rec);
            result.final_w = one.final_w;
            result.config_fingerprint = run_id;
            runs.emplace_back(run_id, std::move(result));
        } else {
            runs.emplace_back(run_id, run_single(cfg, *model, seed, threads));
        }
    }
    std::string path = out_dir + "/" + cfg.scenario + "_trajectory.csv";
    csvio::write_file(trajectory_table(runs), path);
    return path;
}

std::string run_sweep(const ExperimentConfig& cfg, const std::string& out_dir,
                      int threads) {
    SweepResult result = sweep(cfg, threads);
    std::string path = out_dir + "/" + cfg.scenario + "_sweep.csv";
    csvio::write_file(sweep_table(result), path);
    return path;
}

} // namespace byzgd::harness
