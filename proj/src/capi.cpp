#include "byzgd.h"

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "byzgd/acceptance.hpp"
#include "byzgd/harness.hpp"
#include "byzgd/robust_stats.hpp"
#include "byzgd/synth_data.hpp"

using namespace byzgd;

struct byzgd_config {
    harness::ExperimentConfig cfg;
};

namespace {

thread_local std::string g_last_error;

byzgd_status fail(byzgd_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
byzgd_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const ConfigError& e) {
        return fail(BYZGD_ERR_CONFIG, e.what());
    } catch (const NumericalFailure& e) {
        return fail(BYZGD_ERR_NUMERICAL, e.what());
    } catch (const InvalidArgument& e) {
        return fail(BYZGD_ERR_INVALID, e.what());
    } catch (const IoError& e) {
        return fail(BYZGD_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(BYZGD_ERR_NUMERICAL, e.what());
    }
}

void copy_path(const std::string& path, char* out_path, size_t cap) {
    if (!out_path || cap == 0) return;
    size_t n = std::min(path.size(), cap - 1);
    std::memcpy(out_path, path.data(), n);
    out_path[n] = '\0';
}

harness::ExperimentConfig with_seed(const harness::ExperimentConfig& cfg,
                                    uint64_t seed, int use_seed) {
    harness::ExperimentConfig out = cfg;
    if (use_seed) out.seeds = {seed};
    return out;
}

stats::BoundInputs convert(const byzgd_bound_inputs* in) {
    if (!in) throw InvalidArgument("bound inputs: null pointer");
    stats::BoundInputs out;
    out.alpha = in->alpha;
    if (in->beta >= 0.0) out.beta = in->beta;
    out.n = static_cast<std::size_t>(in->n);
    out.m = static_cast<std::size_t>(in->m);
    out.d = static_cast<std::size_t>(in->d);
    out.epsilon = in->epsilon;
    out.l_hat = in->l_hat;
    out.diameter = in->diameter;
    if (in->variance_bound >= 0.0) out.tail.variance_bound = in->variance_bound;
    if (in->skewness_bound >= 0.0) out.tail.skewness_bound = in->skewness_bound;
    if (in->sub_exp >= 0.0) out.tail.sub_exp = in->sub_exp;
    return out;
}

} // namespace

extern "C" {

const char* byzgd_version(void) { return "1.0.0"; }

const char* byzgd_last_error(void) { return g_last_error.c_str(); }

byzgd_status byzgd_config_load(const char* path, byzgd_config** out) {
    return guarded([&]() {
        if (!path || !out) throw InvalidArgument("config_load: null pointer");
        *out = new byzgd_config{harness::load_config(path)};
        return BYZGD_OK;
    });
}

byzgd_status byzgd_config_parse(const char* json_text, byzgd_config** out) {
    return guarded([&]() {
        if (!json_text || !out) throw InvalidArgument("config_parse: null pointer");
        *out = new byzgd_config{harness::parse_config(json_text)};
        return BYZGD_OK;
    });
}

void byzgd_config_free(byzgd_config* cfg) { delete cfg; }

byzgd_status byzgd_run(const byzgd_config* cfg, const char* out_dir, uint64_t seed,
                       int use_seed, int threads, char* out_path,
                       size_t out_path_cap) {
    return guarded([&]() {
        if (!cfg || !out_dir) throw InvalidArgument("run: null pointer");
        auto effective = with_seed(cfg->cfg, seed, use_seed);
        std::string path = harness::run_experiment(effective, out_dir, threads);
        copy_path(path, out_path, out_path_cap);
        return BYZGD_OK;
    });
}

byzgd_status byzgd_sweep(const byzgd_config* cfg, const char* out_dir, uint64_t seed,
                         int use_seed, int threads, char* out_path,
                         size_t out_path_cap) {
    return guarded([&]() {
        if (!cfg || !out_dir) throw InvalidArgument("sweep: null pointer");
        auto effective = with_seed(cfg->cfg, seed, use_seed);
        std::string path = harness::run_sweep(effective, out_dir, threads);
        copy_path(path, out_path, out_path_cap);
        return BYZGD_OK;
    });
}

byzgd_status byzgd_gen(const byzgd_config* cfg, const char* out_dir, uint64_t seed,
                       int use_seed, char* out_path, size_t out_path_cap) {
    return guarded([&]() {
        if (!cfg || !out_dir) throw InvalidArgument("gen: null pointer");
        data::DataGenConfig dc = cfg->cfg.data;
        if (use_seed) dc.seed = seed;
        auto dataset = data::generate(cfg->cfg.generator, dc);
        std::string path =
            std::string(out_dir) + "/" + cfg->cfg.scenario + "_dataset.csv";
        data::write_dataset_csv(dataset, path);
        copy_path(path, out_path, out_path_cap);
        return BYZGD_OK;
    });
}

byzgd_status byzgd_c_epsilon(double eps, double* out) {
    return guarded([&]() {
        if (!out) throw InvalidArgument("c_epsilon: null pointer");
        *out = stats::c_epsilon(eps);
        return BYZGD_OK;
    });
}

byzgd_status byzgd_feasibility_margin(const byzgd_bound_inputs* in, double* out) {
    return guarded([&]() {
        if (!out) throw InvalidArgument("feasibility_margin: null pointer");
        *out = stats::feasibility_margin(convert(in));
        return BYZGD_OK;
    });
}

byzgd_status byzgd_median_bound(const byzgd_bound_inputs* in, double* out) {
    return guarded([&]() {
        if (!out) throw InvalidArgument("median_bound: null pointer");
        *out = stats::median_bound_delta(convert(in)).value;
        return BYZGD_OK;
    });
}

byzgd_status byzgd_trimmed_bound(const byzgd_bound_inputs* in, double* out) {
    return guarded([&]() {
        if (!out) throw InvalidArgument("trimmed_bound: null pointer");
        *out = stats::trimmed_bound_delta(convert(in)).value;
        return BYZGD_OK;
    });
}

byzgd_status byzgd_verify(const char* const* suites, size_t n_suites, int threads,
                          byzgd_report_fn report, void* user, int* failures) {
    return guarded([&]() {
        std::vector<std::string> names;
        for (size_t i = 0; i < n_suites; ++i) {
            if (!suites || !suites[i])
                throw InvalidArgument("verify: null suite name");
            names.emplace_back(suites[i]);
        }
        harness::ReportSink sink;
        if (report)
            sink = [&](const std::string& line) { report(line.c_str(), user); };
        int failed = harness::run_verification(names, threads, sink);
        if (failures) *failures = failed;
        if (failed > 0)
            return fail(BYZGD_ERR_VERIFICATION,
                        std::to_string(failed) + " verification check(s) failed");
        return BYZGD_OK;
    });
}

} // extern "C"
