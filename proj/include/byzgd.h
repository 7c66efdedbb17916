/* C interface to the Byzantine-robust gradient descent simulator.
 *
 * All entry points return a byzgd_status; on failure byzgd_last_error()
 * describes the problem for the calling thread. Handles are opaque and owned
 * by the caller until the matching _free call.
 */
#ifndef BYZGD_H
#define BYZGD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    BYZGD_OK = 0,
    BYZGD_ERR_CONFIG = 1,     /* malformed or inconsistent configuration */
    BYZGD_ERR_NUMERICAL = 2,  /* singular system or non-finite numerics */
    BYZGD_ERR_VERIFICATION = 3, /* one or more verification checks failed */
    BYZGD_ERR_INVALID = 4,    /* bad argument at the API boundary */
    BYZGD_ERR_IO = 5          /* filesystem failure */
} byzgd_status;

typedef struct byzgd_config byzgd_config;

const char* byzgd_version(void);

/* Message of the last failure on this thread; empty string if none. */
const char* byzgd_last_error(void);

byzgd_status byzgd_config_load(const char* path, byzgd_config** out);
byzgd_status byzgd_config_parse(const char* json_text, byzgd_config** out);
void byzgd_config_free(byzgd_config* cfg);

/* Runs one experiment (all configured seeds) and writes the trajectory CSV
 * under out_dir. When use_seed is nonzero the configured seed list is
 * replaced by {seed}. The written path is copied into out_path when given. */
byzgd_status byzgd_run(const byzgd_config* cfg, const char* out_dir,
                       uint64_t seed, int use_seed, int threads,
                       char* out_path, size_t out_path_cap);

/* Same contract for the configured sweep axis; writes the sweep CSV. */
byzgd_status byzgd_sweep(const byzgd_config* cfg, const char* out_dir,
                         uint64_t seed, int use_seed, int threads,
                         char* out_path, size_t out_path_cap);

/* Generates the configured dataset and writes one CSV row per point. */
byzgd_status byzgd_gen(const byzgd_config* cfg, const char* out_dir,
                       uint64_t seed, int use_seed,
                       char* out_path, size_t out_path_cap);

/* Inputs for the deviation-bound calculators. Set beta, variance_bound,
 * skewness_bound, or sub_exp negative when unknown. */
typedef struct {
    double alpha;
    double beta;
    uint64_t n;
    uint64_t m;
    uint64_t d;
    double epsilon;
    double l_hat;
    double diameter;
    double variance_bound;
    double skewness_bound;
    double sub_exp;
} byzgd_bound_inputs;

byzgd_status byzgd_c_epsilon(double eps, double* out);
byzgd_status byzgd_feasibility_margin(const byzgd_bound_inputs* in, double* out);
byzgd_status byzgd_median_bound(const byzgd_bound_inputs* in, double* out);
byzgd_status byzgd_trimmed_bound(const byzgd_bound_inputs* in, double* out);

typedef void (*byzgd_report_fn)(const char* line, void* user);

/* Runs the named verification suites (all when n_suites is 0), streaming one
 * report line per check. Returns BYZGD_ERR_VERIFICATION when any check fails;
 * failures receives the count. */
byzgd_status byzgd_verify(const char* const* suites, size_t n_suites, int threads,
                          byzgd_report_fn report, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif
