#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "byzgd.h"

namespace {

int exit_code(byzgd_status status) {
    switch (status) {
        case BYZGD_OK: return 0;
        case BYZGD_ERR_NUMERICAL: return 2;
        case BYZGD_ERR_VERIFICATION: return 3;
        case BYZGD_ERR_CONFIG:
        case BYZGD_ERR_INVALID:
        case BYZGD_ERR_IO: return 1;
    }
    return 1;
}

int finish(byzgd_status status) {
    if (status != BYZGD_OK)
        std::fprintf(stderr, "error: %s\n", byzgd_last_error());
    return exit_code(status);
}

struct ConfigHandle {
    byzgd_config* cfg = nullptr;
    ~ConfigHandle() { byzgd_config_free(cfg); }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Byzantine-robust distributed gradient descent simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    uint64_t seed = 0;
    bool has_seed = false;
    int threads = 1;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", config_path, "experiment config (JSON)");
        if (needs_config) opt->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed, "override the configured seed list")
            ->each([&](const std::string&) { has_seed = true; });
        cmd->add_option("--threads", threads, "worker threads")
            ->check(CLI::PositiveNumber);
    };

    auto* run_cmd = app.add_subcommand("run", "run one experiment, write trajectory CSV");
    add_common(run_cmd, true);
    auto* sweep_cmd = app.add_subcommand("sweep", "run the configured sweep, write sweep CSV");
    add_common(sweep_cmd, true);
    auto* gen_cmd = app.add_subcommand("gen", "generate the configured dataset as CSV");
    add_common(gen_cmd, true);

    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> suites;
    verify_cmd->add_option("--suite", suites,
                           "suite name (aggregation, statistics, data, convergence); "
                           "repeatable, default all");
    verify_cmd->add_option("--threads", threads, "worker threads")
        ->check(CLI::PositiveNumber);

    auto* bound_cmd = app.add_subcommand("bound", "evaluate a deviation bound");
    std::string quantity;
    byzgd_bound_inputs inputs{};
    inputs.alpha = 0.0;
    inputs.beta = -1.0;
    inputs.n = 1;
    inputs.m = 1;
    inputs.d = 1;
    inputs.epsilon = 1.0 / 6.0;
    inputs.l_hat = 1.0;
    inputs.diameter = 1.0;
    inputs.variance_bound = -1.0;
    inputs.skewness_bound = -1.0;
    inputs.sub_exp = -1.0;
    bound_cmd
        ->add_option("--quantity", quantity,
                     "c_epsilon | feasibility | median | trimmed")
        ->required()
        ->check(CLI::IsMember({"c_epsilon", "feasibility", "median", "trimmed"}));
    bound_cmd->add_option("--alpha", inputs.alpha, "Byzantine fraction");
    bound_cmd->add_option("--beta", inputs.beta, "trim fraction");
    bound_cmd->add_option("--n", inputs.n, "samples per worker");
    bound_cmd->add_option("--m", inputs.m, "workers");
    bound_cmd->add_option("--d", inputs.d, "dimension");
    bound_cmd->add_option("--epsilon", inputs.epsilon, "margin");
    bound_cmd->add_option("--lhat", inputs.l_hat, "stacked Lipschitz constant");
    bound_cmd->add_option("--diameter", inputs.diameter, "parameter-space diameter");
    bound_cmd->add_option("--variance", inputs.variance_bound, "gradient variance bound");
    bound_cmd->add_option("--skewness", inputs.skewness_bound, "gradient skewness bound");
    bound_cmd->add_option("--subexp", inputs.sub_exp, "sub-exponential parameter");

    CLI11_PARSE(app, argc, argv);

    if (bound_cmd->parsed()) {
        double value = 0.0;
        byzgd_status status;
        if (quantity == "c_epsilon")
            status = byzgd_c_epsilon(inputs.epsilon, &value);
        else if (quantity == "feasibility")
            status = byzgd_feasibility_margin(&inputs, &value);
        else if (quantity == "median")
            status = byzgd_median_bound(&inputs, &value);
        else
            status = byzgd_trimmed_bound(&inputs, &value);
        if (status == BYZGD_OK) std::printf("%s=%.17g\n", quantity.c_str(), value);
        return finish(status);
    }

    if (verify_cmd->parsed()) {
        std::vector<const char*> names;
        for (const auto& s : suites) names.push_back(s.c_str());
        int failures = 0;
        byzgd_status status = byzgd_verify(
            names.empty() ? nullptr : names.data(), names.size(), threads,
            [](const char* line, void*) { std::printf("%s\n", line); }, nullptr,
            &failures);
        if (status == BYZGD_OK || status == BYZGD_ERR_VERIFICATION)
            std::printf("%d check(s) failed\n", failures);
        return finish(status);
    }

    ConfigHandle handle;
    byzgd_status status = byzgd_config_load(config_path.c_str(), &handle.cfg);
    if (status != BYZGD_OK) return finish(status);

    char out_path[4096] = {0};
    if (run_cmd->parsed()) {
        status = byzgd_run(handle.cfg, out_dir.c_str(), seed, has_seed, threads,
                           out_path, sizeof(out_path));
    } else if (sweep_cmd->parsed()) {
        status = byzgd_sweep(handle.cfg, out_dir.c_str(), seed, has_seed, threads,
                             out_path, sizeof(out_path));
    } else {
        status = byzgd_gen(handle.cfg, out_dir.c_str(), seed, has_seed, out_path,
                           sizeof(out_path));
    }
    if (status == BYZGD_OK) std::printf("%s\n", out_path);
    return finish(status);
}
