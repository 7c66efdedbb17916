#include "byzgd/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "byzgd/parallel.hpp"
#include "byzgd/rng.hpp"

namespace byzgd::sim {

Vector project_l2_ball(const Vector& w, double r) {
    if (!all_finite(w))
        throw InvalidArgument("project_l2_ball: non-finite input");
    if (r <= 0.0) return w;
    double norm = norm2(w);
    if (norm <= r) return w;
    return (r / norm) * w;
}

Metrics compute_metrics(const losses::LossModel& model, const Vector& w) {
    Metrics metrics;
    if (auto opt = model.population_optimum()) {
        metrics.dist_to_opt = norm2(w - *opt);
        if (auto fw = model.population_value(w)) {
            double f_star = *model.population_value(*opt);
            metrics.excess_risk = *fw - f_star;
        }
    }
    if (auto g = model.population_gradient(w)) metrics.pop_grad_norm = norm2(*g);
    return metrics;
}

namespace {

attack::LabelSpace label_space_for(const data::ShardedDataset& dataset) {
    attack::LabelSpace labels;
    labels.classification = dataset.kind == data::GeneratorKind::Logistic;
    labels.max_label = 1;
    return labels;
}

double default_eta(const losses::LossModel& model, double requested) {
    if (requested > 0.0) return requested;
    return 1.0 / model.smoothness().population_smoothness;
}

double default_radius(const losses::LossModel& model, double requested) {
    if (requested > 0.0) return requested;
    if (auto opt = model.population_optimum()) {
        double base = norm2(*opt);
        if (base > 0.0) return 10.0 * base;
    }
    return 0.0; // unbounded
}

// Installs the data-level corruption on Byzantine shards before round 0.
std::vector<losses::Shard> effective_shards(const data::ShardedDataset& dataset,
                                            const attack::ByzantineAssignment& assignment,
                                            const attack::AttackSpec& atk,
                                            uint64_t seed) {
    std::vector<losses::Shard> shards = dataset.shards;
    if (atk.data_level()) {
        attack::LabelSpace labels = label_space_for(dataset);
        for (std::size_t worker : assignment.byzantine_set)
            shards[worker] =
                attack::corrupt_dataset(shards[worker], atk, labels, mix_key(seed, worker));
    }
    return shards;
}

losses::Shard minibatch(const losses::Shard& shard, double fraction, uint64_t seed,
                        std::size_t worker, std::size_t round) {
    std::size_t n = shard.size();
    std::size_t take = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(n)));
    take = std::clamp<std::size_t>(take, 1, n);
    if (take == n) return shard;
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    RngStream rng(seed, worker, round, 0x4d494e49ull /* minibatch stream tag */);
    losses::Shard out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        std::swap(pool[i], pool[i + rng.below(n - i)]);
        out.push_back(shard[pool[i]]);
    }
    return out;
}

} // namespace

RunResult run_robust_gd(const losses::LossModel& model,
                        const data::ShardedDataset& dataset,
                        const attack::ByzantineAssignment& assignment,
                        const attack::AttackSpec& atk,
                        const agg::AggregationRule& rule,
                        const GdSettings& settings, uint64_t seed, int threads) {
    if (dataset.shards.empty())
        throw InvalidArgument("run_robust_gd: empty dataset");
    std::size_t m = dataset.shards.size();
    std::size_t d = dataset.config.d;
    double eta = default_eta(model, settings.eta);
    double radius = default_radius(model, settings.domain_radius);

    Vector w = settings.w0.empty() ? Vector(d, 0.0) : settings.w0;
    if (w.size() != d)
        throw InvalidArgument("run_robust_gd: w0 dimension mismatch");
    w = project_l2_ball(w, radius);

    auto shards = effective_shards(dataset, assignment, atk, seed);

    RunResult result;
    result.trajectory.reserve(settings.rounds + 1);

    auto record = [&](std::size_t round, const Vector& wt,
                      std::optional<double> agg_dev) {
        Metrics metrics = compute_metrics(model, wt);
        RoundRecord rec;
        rec.round = round;
        rec.dist_to_opt = metrics.dist_to_opt;
        rec.excess_risk = metrics.excess_risk;
        rec.pop_grad_norm = metrics.pop_grad_norm;
        rec.aggregate_deviation = agg_dev;
        result.trajectory.push_back(rec);
    };

    std::vector<Vector> messages(m);
    for (std::size_t t = 0; t < settings.rounds; ++t) {
        // Worker phase: honest workers compute their local empirical gradient;
        // Byzantine workers forge (message-level) or compute honestly over
        // their corrupted shard (data-level).
        parallel_for(m, threads, [&](std::size_t i) {
            const losses::Shard* shard = &shards[i];
            losses::Shard batch;
            if (settings.minibatch_fraction > 0.0 && settings.minibatch_fraction < 1.0) {
                batch = minibatch(*shard, settings.minibatch_fraction, seed, i, t);
                shard = &batch;
            }
            Vector g = losses::local_empirical_gradient(model, w, *shard);
            if (assignment.is_byzantine(i) && atk.message_level())
                g = attack::forge_message(g, atk, i, t, seed);
            messages[i] = std::move(g);
        });

        Vector aggregated = agg::aggregate(rule, VectorBatch(messages));
        if (!all_finite(aggregated))
            throw NumericalFailure("run_robust_gd: non-finite aggregate at round " +
                                   std::to_string(t));

        std::optional<double> agg_dev;
        if (auto pop_grad = model.population_gradient(w))
            agg_dev = norm2(aggregated - *pop_grad);
        record(t, w, agg_dev);

        axpy(-eta, aggregated, w);
        w = project_l2_ball(w, radius);
    }
    record(settings.rounds, w, std::nullopt);
    result.final_w = w;
    return result;
}

OneRoundResult run_one_round(const losses::LossModel& model,
                             const data::ShardedDataset& dataset,
                             const attack::ByzantineAssignment& assignment,
                             const attack::AttackSpec& atk,
                             const OneRoundSettings& settings, uint64_t seed,
                             int threads) {
    if (dataset.shards.empty())
        throw InvalidArgument("run_one_round: empty dataset");
    std::size_t m = dataset.shards.size();
    std::size_t d = dataset.config.d;

    auto shards = effective_shards(dataset, assignment, atk, seed);

    OneRoundResult result;
    result.per_worker_erms.assign(m, Vector());

    auto local_erm = [&](std::size_t worker) -> Vector {
        const losses::Shard& shard = shards[worker];
        if (!settings.force_iterative) {
            if (auto q = model.shard_quadratic(shard)) {
                try {
                    return losses::local_erm_quadratic(q->h, q->p);
                } catch (const NumericalFailure& e) {
                    throw NumericalFailure("run_one_round: worker " +
                                           std::to_string(worker) + ": " + e.what());
                }
            }
        }
        return losses::local_erm_iterative(model, shard, Vector(d, 0.0), settings.erm).w;
    };

    parallel_for(m, threads, [&](std::size_t i) {
        Vector erm = local_erm(i);
        if (assignment.is_byzantine(i) && atk.message_level())
            erm = attack::forge_message(erm, atk, i, 0, seed);
        result.per_worker_erms[i] = std::move(erm);
    });

    result.final_w = agg::coordinate_median(VectorBatch(result.per_worker_erms));
    return result;
}

} // namespace byzgd::sim
