#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "byzgd/csv.hpp"
#include "byzgd/synth_data.hpp"

using namespace byzgd;
using namespace byzgd::data;

namespace {

DataGenConfig small_config() {
    DataGenConfig cfg;
    cfg.d = 3;
    cfg.n = 40;
    cfg.m = 5;
    cfg.sigma = 1.0;
    cfg.w_star = {1.0, -1.0, 0.5};
    cfg.seed = 99;
    return cfg;
}

bool datasets_equal(const ShardedDataset& a, const ShardedDataset& b) {
    if (a.shards.size() != b.shards.size()) return false;
    for (std::size_t i = 0; i < a.shards.size(); ++i) {
        if (a.shards[i].size() != b.shards[i].size()) return false;
        for (std::size_t j = 0; j < a.shards[i].size(); ++j) {
            if (a.shards[i][j].x != b.shards[i][j].x) return false;
            if (a.shards[i][j].y != b.shards[i][j].y) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("config validation") {
    DataGenConfig cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.d = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = small_config();
    cfg.sigma = -1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = small_config();
    cfg.w_star.pop_back();
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
}

TEST_CASE("rademacher features have exact two-point support") {
    auto ds = gen_rademacher_regression(small_config());
    CHECK(ds.m() == 5);
    CHECK(ds.n() == 40);
    for (const auto& shard : ds.shards)
        for (const auto& z : shard)
            for (double x : z.x) CHECK((x == 1.0 || x == -1.0));
}

TEST_CASE("noiseless labels are exact inner products") {
    DataGenConfig cfg = small_config();
    cfg.sigma = 0.0;
    auto ds = gen_rademacher_regression(cfg);
    for (const auto& shard : ds.shards)
        for (const auto& z : shard) CHECK(z.y == dot(z.x, cfg.w_star));
}

TEST_CASE("gaussian features have near-zero empirical mean") {
    DataGenConfig cfg = small_config();
    cfg.n = 2000;
    cfg.m = 10;
    auto ds = gen_gaussian_regression(cfg);
    double count = static_cast<double>(cfg.n * cfg.m);
    for (std::size_t k = 0; k < cfg.d; ++k) {
        double mean = 0.0;
        for (const auto& shard : ds.shards)
            for (const auto& z : shard) mean += z.x[k];
        mean /= count;
        CHECK(std::abs(mean) <= 5.0 / std::sqrt(count));
    }
}

TEST_CASE("logistic labels are binary") {
    auto ds = gen_logistic(small_config());
    CHECK(ds.kind == GeneratorKind::Logistic);
    std::size_t ones = 0;
    for (const auto& shard : ds.shards)
        for (const auto& z : shard) {
            CHECK((z.y == 0.0 || z.y == 1.0));
            if (z.y == 1.0) ++ones;
        }
    CHECK(ones > 0);
    CHECK(ones < ds.m() * ds.n());
}

TEST_CASE("generation is deterministic in the config and varies with seed") {
    DataGenConfig cfg = small_config();
    auto a = gen_rademacher_regression(cfg);
    auto b = gen_rademacher_regression(cfg);
    CHECK(datasets_equal(a, b));

    cfg.seed = 100;
    auto c = gen_rademacher_regression(cfg);
    CHECK_FALSE(datasets_equal(a, c));
}

TEST_CASE("partition check") {
    auto ds = gen_gaussian_regression(small_config());
    CHECK(partition_check(ds).pass);

    auto truncated = ds;
    truncated.shards[2].pop_back();
    CHECK_FALSE(partition_check(truncated).pass);

    auto duplicated = ds;
    duplicated.shards[3] = duplicated.shards[1];
    auto report = partition_check(duplicated);
    CHECK_FALSE(report.pass);
    CHECK(report.detail.find("duplicates") != std::string::npos);
}

TEST_CASE("dataset csv layout and round trip") {
    DataGenConfig cfg = small_config();
    cfg.n = 4;
    cfg.m = 2;
    auto ds = gen_gaussian_regression(cfg);
    std::string path = "test_dataset_tmp.csv";
    write_dataset_csv(ds, path);

    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    in.close();
    auto table = csvio::parse(buf.str());
    std::remove(path.c_str());

    CHECK(table.header ==
          std::vector<std::string>{"worker_id", "index", "x_1", "x_2", "x_3", "y"});
    REQUIRE(table.rows.size() == 8);
    // Shortest round-trip formatting: parsed values reproduce doubles exactly.
    const auto& row = table.rows[5]; // worker 1, index 1
    CHECK(row[0] == "1");
    CHECK(row[1] == "1");
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(std::stod(row[2 + k]) == ds.shards[1][1].x[k]);
    CHECK(std::stod(row[5]) == ds.shards[1][1].y);
}
