#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "byzgd.h"

namespace fs = std::filesystem;

namespace {

const char* kConfig = R"({
    "scenario": "capi",
    "data": {"generator": "rademacher_regression", "d": 3, "n": 20, "m": 5,
             "sigma": 1.0, "w_star": {"norm": 1.0}},
    "alpha": 0.2,
    "attack": {"variant": "sign_flip", "scale": 5.0},
    "rule": {"variant": "median"},
    "gd": {"eta": 1.0, "rounds": 3},
    "seeds": [1, 2],
    "sweep": {"axis": "alpha", "values": [0.0, 0.2]}
})";

byzgd_bound_inputs sample_inputs() {
    byzgd_bound_inputs in{};
    in.alpha = 0.1;
    in.beta = 0.2;
    in.n = 400;
    in.m = 20;
    in.d = 5;
    in.epsilon = 1.0 / 6.0;
    in.l_hat = 1.0;
    in.diameter = 10.0;
    in.variance_bound = 3.0;
    in.skewness_bound = 1.6;
    in.sub_exp = 2.0;
    return in;
}

} // namespace

TEST_CASE("version and error state") {
    CHECK(byzgd_version() != nullptr);
    CHECK(std::strlen(byzgd_version()) > 0);
}

TEST_CASE("config parsing statuses") {
    byzgd_config* cfg = nullptr;
    CHECK(byzgd_config_parse("{ not json", &cfg) == BYZGD_ERR_CONFIG);
    CHECK(std::strlen(byzgd_last_error()) > 0);
    CHECK(byzgd_config_parse(R"({"seeds": [1]})", &cfg) == BYZGD_ERR_CONFIG);
    CHECK(byzgd_config_parse(nullptr, &cfg) == BYZGD_ERR_INVALID);

    CHECK(byzgd_config_parse(kConfig, &cfg) == BYZGD_OK);
    REQUIRE(cfg != nullptr);
    CHECK(byzgd_last_error()[0] == '\0');
    byzgd_config_free(cfg);

    CHECK(byzgd_config_load("missing_file_xyz.json", &cfg) == BYZGD_ERR_IO);
}

TEST_CASE("run, sweep, and gen produce files") {
    fs::path dir = fs::temp_directory_path() / "byzgd_capi_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    byzgd_config* cfg = nullptr;
    REQUIRE(byzgd_config_parse(kConfig, &cfg) == BYZGD_OK);

    char path[1024] = {0};
    CHECK(byzgd_run(cfg, dir.string().c_str(), 0, 0, 2, path, sizeof(path)) ==
          BYZGD_OK);
    CHECK(fs::exists(path));
    CHECK(std::string(path).find("capi_trajectory.csv") != std::string::npos);

    CHECK(byzgd_sweep(cfg, dir.string().c_str(), 7, 1, 2, path, sizeof(path)) ==
          BYZGD_OK);
    CHECK(fs::exists(path));
    CHECK(std::string(path).find("capi_sweep.csv") != std::string::npos);

    CHECK(byzgd_gen(cfg, dir.string().c_str(), 0, 0, path, sizeof(path)) == BYZGD_OK);
    CHECK(fs::exists(path));
    CHECK(std::string(path).find("capi_dataset.csv") != std::string::npos);

    CHECK(byzgd_run(nullptr, dir.string().c_str(), 0, 0, 1, path, sizeof(path)) ==
          BYZGD_ERR_INVALID);
    CHECK(byzgd_run(cfg, (dir / "no" / "such" / "dir").string().c_str(), 0, 0, 1,
                    path, sizeof(path)) == BYZGD_ERR_IO);

    byzgd_config_free(cfg);
    fs::remove_all(dir);
}

TEST_CASE("bound calculators") {
    double value = 0.0;
    CHECK(byzgd_c_epsilon(1.0 / 6.0, &value) == BYZGD_OK);
    CHECK(value > 3.99);
    CHECK(value < 4.02);
    CHECK(byzgd_c_epsilon(0.7, &value) == BYZGD_ERR_INVALID);

    byzgd_bound_inputs in = sample_inputs();
    CHECK(byzgd_feasibility_margin(&in, &value) == BYZGD_OK);
    CHECK(byzgd_median_bound(&in, &value) == BYZGD_OK);
    CHECK(value > 0.0);
    CHECK(byzgd_trimmed_bound(&in, &value) == BYZGD_OK);
    CHECK(value > 0.0);

    byzgd_bound_inputs no_tail = sample_inputs();
    no_tail.variance_bound = -1.0;
    CHECK(byzgd_median_bound(&no_tail, &value) == BYZGD_ERR_INVALID);

    byzgd_bound_inputs low_beta = sample_inputs();
    low_beta.beta = 0.05; // below alpha
    CHECK(byzgd_trimmed_bound(&low_beta, &value) == BYZGD_ERR_INVALID);

    CHECK(byzgd_median_bound(nullptr, &value) == BYZGD_ERR_INVALID);
}

TEST_CASE("verify rejects unknown suites") {
    int failures = -1;
    const char* bad[] = {"nonsense"};
    CHECK(byzgd_verify(bad, 1, 1, nullptr, nullptr, &failures) == BYZGD_ERR_INVALID);
}
