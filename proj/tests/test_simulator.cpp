#include <doctest.h>

#include <cmath>

#include "byzgd/harness.hpp"
#include "byzgd/rng.hpp"
#include "byzgd/simulator.hpp"

using namespace byzgd;
using namespace byzgd::sim;

namespace {

data::ShardedDataset manual_dataset(std::vector<losses::Shard> shards,
                                    Vector w_star) {
    data::ShardedDataset ds;
    ds.config.d = shards.front().front().x.size();
    ds.config.n = shards.front().size();
    ds.config.m = shards.size();
    ds.config.w_star = std::move(w_star);
    ds.shards = std::move(shards);
    ds.kind = data::GeneratorKind::RademacherRegression;
    return ds;
}

harness::ExperimentConfig regression_config() {
    harness::ExperimentConfig cfg;
    cfg.generator = data::GeneratorKind::RademacherRegression;
    cfg.data.d = 10;
    cfg.data.n = 200;
    cfg.data.m = 20;
    cfg.data.sigma = 1.0;
    cfg.data.w_star.assign(10, 1.0 / std::sqrt(10.0));
    cfg.gd.eta = 1.0;
    cfg.gd.rounds = 30;
    cfg.seeds = {1};
    return cfg;
}

} // namespace

TEST_CASE("l2 projection") {
    Vector inside = {0.3, 0.4};
    CHECK(project_l2_ball(inside, 1.0) == inside);
    Vector outside = {3.0, 4.0};
    Vector projected = project_l2_ball(outside, 1.0);
    CHECK(norm2(projected) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(projected[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(project_l2_ball(outside, 0.0) == outside); // unbounded
    Vector bad = {std::nan("")};
    CHECK_THROWS_AS(project_l2_ball(bad, 1.0), InvalidArgument);
}

TEST_CASE("one-step interpolation with a single worker") {
    losses::LinearRegressionLoss model({2.0}, 0.0);
    auto ds = manual_dataset({{{{1.0}, 2.0}}}, {2.0});
    auto assignment = attack::select_byzantine_set(1, 0.0, 0);
    GdSettings settings;
    settings.eta = 1.0;
    settings.rounds = 1;
    auto result = run_robust_gd(model, ds, assignment, attack::AttackSpec{},
                                agg::AggregationRule::mean(), settings, 0);
    CHECK(result.final_w == Vector{2.0});
    REQUIRE(result.trajectory.size() == 2);
    CHECK(*result.trajectory[0].dist_to_opt == 2.0);
    CHECK(*result.trajectory[1].dist_to_opt == 0.0);
    CHECK_FALSE(result.trajectory[1].aggregate_deviation.has_value());
}

TEST_CASE("median neutralizes one attacker among duplicated honest shards") {
    losses::Shard shard;
    RngStream rng(7, 0);
    for (int i = 0; i < 30; ++i) {
        losses::DataPoint z;
        z.x = {rng.rademacher(), rng.rademacher()};
        z.y = z.x[0] - z.x[1] + 0.1 * rng.normal();
        shard.push_back(z);
    }
    losses::LinearRegressionLoss model({1.0, -1.0}, 0.1);
    GdSettings settings;
    settings.eta = 1.0;
    settings.rounds = 15;

    attack::AttackSpec sign_flip;
    sign_flip.kind = attack::AttackKind::SignFlip;
    sign_flip.scale = 10.0;

    auto attacked_ds = manual_dataset({shard, shard, shard}, {1.0, -1.0});
    attack::ByzantineAssignment one_bad;
    one_bad.byzantine_set = {2};
    one_bad.alpha_realized = 1.0 / 3.0;
    auto attacked = run_robust_gd(model, attacked_ds, one_bad, sign_flip,
                                  agg::AggregationRule::median(), settings, 0);

    auto clean_ds = manual_dataset({shard, shard}, {1.0, -1.0});
    auto clean = run_robust_gd(model, clean_ds, attack::select_byzantine_set(2, 0.0, 0),
                               attack::AttackSpec{}, agg::AggregationRule::median(),
                               settings, 0);
    CHECK(attacked.final_w == clean.final_w);
    for (std::size_t t = 0; t < attacked.trajectory.size(); ++t)
        CHECK(*attacked.trajectory[t].dist_to_opt == *clean.trajectory[t].dist_to_opt);
}

TEST_CASE("trimmed mean at beta zero reproduces the mean trajectory exactly") {
    auto cfg = regression_config();
    auto model = harness::make_model(cfg);
    cfg.rule = agg::AggregationRule::mean();
    auto mean_run = harness::run_single(cfg, *model, 1);
    cfg.rule = agg::AggregationRule::trimmed_mean(0.0);
    auto trim_run = harness::run_single(cfg, *model, 1);
    CHECK(mean_run.final_w == trim_run.final_w);
    for (std::size_t t = 0; t < mean_run.trajectory.size(); ++t)
        CHECK(*mean_run.trajectory[t].dist_to_opt ==
              *trim_run.trajectory[t].dist_to_opt);
}

TEST_CASE("attack-free mean GD contracts by a factor of 100") {
    auto cfg = regression_config();
    // Start far from the optimum so contraction dominates the noise floor.
    cfg.data.w_star.assign(10, 10.0 / std::sqrt(10.0));
    cfg.rule = agg::AggregationRule::mean();
    auto model = harness::make_model(cfg);
    auto result = harness::run_single(cfg, *model, 3);
    CHECK(*result.trajectory.back().dist_to_opt <=
          *result.trajectory.front().dist_to_opt / 100.0);
}

TEST_CASE("projection keeps iterates inside the ball under attack") {
    auto cfg = regression_config();
    cfg.alpha = 0.4;
    cfg.attack.kind = attack::AttackKind::SignFlip;
    cfg.attack.scale = 50.0;
    cfg.rule = agg::AggregationRule::mean();
    cfg.gd.domain_radius = 2.0;
    auto model = harness::make_model(cfg);
    auto result = harness::run_single(cfg, *model, 5);
    CHECK(norm2(result.final_w) <= 2.0 + 1e-12);
}

TEST_CASE("runs are schedule independent") {
    auto cfg = regression_config();
    cfg.alpha = 0.25;
    cfg.attack.kind = attack::AttackKind::GaussianMessage;
    cfg.attack.scale = 3.0;
    cfg.rule = agg::AggregationRule::median();
    cfg.gd.minibatch_fraction = 0.5;
    auto model = harness::make_model(cfg);
    auto serial = harness::run_single(cfg, *model, 11, 1);
    auto parallel = harness::run_single(cfg, *model, 11, 8);
    CHECK(serial.final_w == parallel.final_w);
    for (std::size_t t = 0; t < serial.trajectory.size(); ++t) {
        CHECK(*serial.trajectory[t].dist_to_opt == *parallel.trajectory[t].dist_to_opt);
        if (serial.trajectory[t].aggregate_deviation)
            CHECK(*serial.trajectory[t].aggregate_deviation ==
                  *parallel.trajectory[t].aggregate_deviation);
    }
}

TEST_CASE("one-round aggregation") {
    losses::LinearRegressionLoss model({1.0, 2.0}, 0.0);
    losses::Shard shard = {{{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 2.0}, {{1.0, 1.0}, 3.0}};

    // All honest with identical shards: output is the common ERM.
    auto ds = manual_dataset({shard, shard, shard}, {1.0, 2.0});
    auto honest = run_one_round(model, ds, attack::select_byzantine_set(3, 0.0, 0),
                                attack::AttackSpec{}, OneRoundSettings{}, 0);
    CHECK(honest.final_w[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(honest.final_w[1] == doctest::Approx(2.0).epsilon(1e-10));

    // One huge constant outlier is ignored by the median.
    attack::AttackSpec constant;
    constant.kind = attack::AttackKind::ConstantVector;
    constant.constant = {1e6, 1e6};
    attack::ByzantineAssignment one_bad;
    one_bad.byzantine_set = {1};
    auto attacked = run_one_round(model, ds, one_bad, constant, OneRoundSettings{}, 0);
    CHECK(attacked.final_w[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(attacked.final_w[1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(attacked.per_worker_erms[1] == Vector{1e6, 1e6});
}
