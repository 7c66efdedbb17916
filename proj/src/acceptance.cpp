#include "byzgd/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "byzgd/harness.hpp"
#include "byzgd/robust_stats.hpp"
#include "byzgd/rng.hpp"

namespace byzgd::harness {

namespace {

namespace fs = std::filesystem;

uint64_t ulp_distance(double a, double b) {
    if (a == b) return 0;
    if (!std::isfinite(a) || !std::isfinite(b))
        return std::numeric_limits<uint64_t>::max();
    auto key = [](double x) {
        uint64_t u;
        std::memcpy(&u, &x, sizeof(u));
        return (u >> 63) ? ~u : (u | 0x8000000000000000ull);
    };
    uint64_t ka = key(a), kb = key(b);
    return ka > kb ? ka - kb : kb - ka;
}

std::string fmt(double v) { return csvio::format_double(v); }

// 1. Median and trimmed mean against a naive per-coordinate sort oracle.
CheckResult check_aggregator_oracle() {
    CheckResult r;
    r.name = "aggregator_oracle_equivalence";
    r.threshold = "<= 4 ulps on 1000 random batches";
    uint64_t worst = 0;
    for (std::size_t iter = 0; iter < 1000; ++iter) {
        RngStream rng(0xA661, iter);
        std::size_t m = 1 + rng.below(15);
        std::size_t d = 1 + rng.below(8);
        double beta = 0.5 * rng.uniform();
        std::vector<Vector> vecs(m, Vector(d));
        for (auto& v : vecs)
            for (auto& x : v) x = (rng.uniform() - 0.5) * 2e6;
        VectorBatch batch(vecs);
        Vector med = agg::coordinate_median(batch);
        Vector trim = agg::coordinate_trimmed_mean(batch, beta);
        std::size_t k = static_cast<std::size_t>(beta * static_cast<double>(m));
        for (std::size_t c = 0; c < d; ++c) {
            Vector col(m);
            for (std::size_t i = 0; i < m; ++i) col[i] = vecs[i][c];
            std::sort(col.begin(), col.end());
            double med_oracle = (m % 2 == 1)
                                    ? col[m / 2]
                                    : 0.5 * (col[m / 2 - 1] + col[m / 2]);
            double sum = 0.0;
            for (std::size_t i = k; i < m - k; ++i) sum += col[i];
            double trim_oracle = sum / static_cast<double>(m - 2 * k);
            worst = std::max(worst, ulp_distance(med[c], med_oracle));
            worst = std::max(worst, ulp_distance(trim[c], trim_oracle));
        }
    }
    r.measured = static_cast<double>(worst);
    r.pass = worst <= 4;
    r.detail = "max ulp gap " + std::to_string(worst);
    return r;
}

// 2. Deterministic trimmed-mean deviation bound (t + 3*beta*s)/(1 - 2*beta)
// over randomized constructions with at most floor(beta*m) corruptions.
CheckResult check_trimmed_bound() {
    CheckResult r;
    r.name = "trimmed_mean_deterministic_bound";
    r.threshold = "0 violations in 10000 constructions";
    std::size_t violations = 0;
    for (std::size_t iter = 0; iter < 10000; ++iter) {
        RngStream rng(0x7B1D, iter);
        std::size_t m = 3 + rng.below(39);
        double beta = 0.5 * rng.uniform();
        std::size_t k = static_cast<std::size_t>(beta * static_cast<double>(m));
        std::size_t q = rng.below(k + 1);
        double mu = (rng.uniform() - 0.5) * 20.0;
        double s = 5.0 * rng.uniform() + 1e-3;

        std::vector<double> values;
        values.reserve(m);
        double honest_sum = 0.0;
        for (std::size_t i = 0; i < m - q; ++i) {
            double x = mu + (2.0 * rng.uniform() - 1.0) * s;
            honest_sum += x;
            values.push_back(x);
        }
        double t = std::abs(honest_sum / static_cast<double>(m - q) - mu);
        for (std::size_t i = 0; i < q; ++i)
            values.push_back((rng.uniform() - 0.5) * 2e6);

        double tm = agg::scalar_trimmed_mean(values, beta);
        double bound = (t + 3.0 * beta * s) / (1.0 - 2.0 * beta);
        if (std::abs(tm - mu) > bound * (1.0 + 1e-9) + 1e-12) ++violations;
    }
    r.measured = static_cast<double>(violations);
    r.pass = violations == 0;
    r.detail = std::to_string(violations) + " violations";
    return r;
}

// 3. C_eps value at 1/6 and strict monotonicity on a 50-point grid.
CheckResult check_c_epsilon() {
    CheckResult r;
    r.name = "c_epsilon_constant";
    r.threshold = "C(1/6) in [3.99, 4.02], strictly decreasing";
    double c6 = stats::c_epsilon(1.0 / 6.0);
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 50; ++i) {
        double eps = 0.01 + (0.49 - 0.01) * static_cast<double>(i) / 49.0;
        double c = stats::c_epsilon(eps);
        if (!(c < prev)) monotone = false;
        prev = c;
    }
    r.measured = c6;
    r.pass = c6 >= 3.99 && c6 <= 4.02 && monotone;
    r.detail = "C(1/6) = " + fmt(c6) + (monotone ? ", monotone" : ", NOT monotone");
    return r;
}

// Gradient-noise samples of the squared loss at a point with ||w - w*|| = 1.
std::vector<Vector> gradient_noise_samples(bool gaussian_features, std::size_t count,
                                           uint64_t seed) {
    const std::size_t d = 5;
    Vector delta(d);
    double nrm = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        delta[j] = static_cast<double>(j + 1);
        nrm += delta[j] * delta[j];
    }
    nrm = std::sqrt(nrm);
    for (auto& x : delta) x /= nrm;

    std::vector<Vector> samples(count, Vector(d));
    for (std::size_t i = 0; i < count; ++i) {
        RngStream rng(seed, i);
        Vector x(d);
        for (auto& v : x) v = gaussian_features ? rng.normal() : rng.rademacher();
        double resid = dot(x, delta) - rng.normal(); // sigma = 1
        for (std::size_t j = 0; j < d; ++j)
            samples[i][j] = x[j] * resid - delta[j];
    }
    return samples;
}

// 4. Gradient-noise variance and per-coordinate absolute skewness for both
// feature laws (targets (d-1)+d*sigma^2 = 9 and (d+1)+d*sigma^2 = 11 at d=5).
CheckResult check_noise_statistics() {
    CheckResult r;
    r.name = "gradient_noise_statistics";
    r.threshold = "variance within 2% of 9 / 11, skewness <= 480 / 429";
    const std::size_t count = 1000000;
    double worst_var_err = 0.0;
    bool skew_ok = true;
    std::string detail;
    struct Case { bool gaussian; double target_var; double skew_cap; };
    for (Case c : {Case{false, 9.0, 480.0}, Case{true, 11.0, 429.0}}) {
        auto samples = gradient_noise_samples(c.gaussian, count, c.gaussian ? 0xB2 : 0xB1);
        double var = stats::empirical_variance(samples);
        Vector skew = stats::empirical_abs_skewness(samples);
        double max_skew = *std::max_element(skew.begin(), skew.end());
        double var_err = std::abs(var - c.target_var) / c.target_var;
        worst_var_err = std::max(worst_var_err, var_err);
        if (max_skew > c.skew_cap) skew_ok = false;
        detail += std::string(c.gaussian ? "gaussian" : "rademacher") + ": var " +
                  fmt(var) + ", max skew " + fmt(max_skew) + "; ";
    }
    r.measured = worst_var_err;
    r.pass = worst_var_err <= 0.02 && skew_ok;
    r.detail = detail;
    return r;
}

// 5. Sub-exponential moment-generating-function check on a gradient
// coordinate with v = sqrt(sigma^2 + ||w - w*||^2) = sqrt(2).
CheckResult check_sub_exponential() {
    CheckResult r;
    r.name = "sub_exponential_tail";
    r.threshold = "empirical MGF <= 1.1 * exp(v^2 lambda^2 / 2)";
    const std::size_t count = 1000000;
    auto vectors = gradient_noise_samples(true, count, 0xC5);
    std::vector<double> coord(count);
    for (std::size_t i = 0; i < count; ++i) coord[i] = vectors[i][0];
    double v = std::sqrt(2.0);
    std::vector<double> grid;
    for (double l : {0.1, 0.3, 0.5}) {
        grid.push_back(l / v);
        grid.push_back(-l / v);
    }
    auto report = stats::sub_exponential_check(coord, v, grid, 0.1);
    r.measured = report.worst_ratio;
    r.pass = report.pass;
    r.detail = "worst MGF ratio " + fmt(report.worst_ratio);
    return r;
}

// 6. Median-of-means concentration at t = 1, with and without 2 outlier
// machines out of 21.
CheckResult check_median_of_means() {
    CheckResult r;
    r.name = "median_of_means_concentration";
    double cap = 4.0 * std::exp(-2.0) + 0.03;
    r.threshold = "violation rate <= " + fmt(cap);
    stats::ScalarDistribution gauss;
    gauss.mu = 0.0;
    gauss.sigma = 1.0;
    gauss.abs_skewness = 2.0 * std::sqrt(2.0 / 3.14159265358979323846);
    gauss.sample = [](RngStream& rng) { return rng.normal(); };

    stats::MedianOfMeansParams params;
    params.n = 50;
    params.m = 21;
    params.t = 1.0;
    params.epsilon = 1.0 / 6.0;
    params.trials = 2000;
    params.seed = 0xC0;
    params.outlier_scale = 1e6;

    params.alpha = 0.0;
    auto clean = stats::verify_median_of_means(gauss, params);

    params.alpha = 2.5 / 21.0; // two Byzantine machines
    params.enforce_premise = false;
    auto attacked = stats::verify_median_of_means(gauss, params);

    r.measured = std::max(clean.violation_rate, attacked.violation_rate);
    r.pass = r.measured <= cap;
    r.detail = "clean " + fmt(clean.violation_rate) + ", attacked " +
               fmt(attacked.violation_rate);
    return r;
}

ExperimentConfig regression_scenario(std::size_t d, std::size_t n, std::size_t m) {
    ExperimentConfig cfg;
    cfg.scenario = "acceptance";
    cfg.generator = data::GeneratorKind::RademacherRegression;
    cfg.data.d = d;
    cfg.data.n = n;
    cfg.data.m = m;
    cfg.data.sigma = 1.0;
    cfg.data.feature_law = data::FeatureLaw::Rademacher;
    cfg.data.w_star.assign(d, 1.0 / std::sqrt(static_cast<double>(d)));
    cfg.gd.eta = 1.0;
    cfg.gd.rounds = 50;
    for (uint64_t s = 1; s <= 10; ++s) cfg.seeds.push_back(s);
    return cfg;
}

double mean_final_dist(const ExperimentConfig& cfg, int threads) {
    auto model = make_model(cfg);
    double sum = 0.0;
    for (uint64_t seed : cfg.seeds) {
        auto result = run_single(cfg, *model, seed, threads);
        sum += *result.trajectory.back().dist_to_opt;
    }
    return sum / static_cast<double>(cfg.seeds.size());
}

// 7. Median and trimmed mean survive a strong sign-flip attack that ruins
// the plain mean, while staying near the attack-free error floor.
CheckResult check_robust_convergence(int threads) {
    CheckResult r;
    r.name = "robust_convergence_under_attack";
    r.threshold = "<= 0.1 * attacked mean and <= 3 * clean mean";
    ExperimentConfig cfg = regression_scenario(20, 200, 20);
    cfg.alpha = 0.2;
    cfg.attack.kind = attack::AttackKind::SignFlip;
    cfg.attack.scale = 10.0;

    cfg.rule = agg::AggregationRule::mean();
    double mean_att = mean_final_dist(cfg, threads);
    cfg.rule = agg::AggregationRule::median();
    double med = mean_final_dist(cfg, threads);
    cfg.rule = agg::AggregationRule::trimmed_mean(0.2);
    double trim = mean_final_dist(cfg, threads);

    ExperimentConfig clean = cfg;
    clean.alpha = 0.0;
    clean.attack = attack::AttackSpec{};
    clean.rule = agg::AggregationRule::mean();
    double mean_clean = mean_final_dist(clean, threads);

    r.measured = std::max(med, trim) / mean_att;
    r.pass = med <= 0.1 * mean_att && trim <= 0.1 * mean_att &&
             med <= 3.0 * mean_clean && trim <= 3.0 * mean_clean;
    r.detail = "mean " + fmt(mean_att) + ", median " + fmt(med) + ", trimmed " +
               fmt(trim) + ", clean mean " + fmt(mean_clean);
    return r;
}

// 8. Seed-averaged median-GD error grows with the Byzantine fraction.
CheckResult check_alpha_scaling(int threads) {
    CheckResult r;
    r.name = "alpha_scaling";
    r.threshold = "strictly increasing, OLS slope > 0, r^2 >= 0.8";
    ExperimentConfig cfg = regression_scenario(20, 200, 20);
    cfg.attack.kind = attack::AttackKind::SignFlip;
    cfg.attack.scale = 10.0;
    cfg.rule = agg::AggregationRule::median();

    std::vector<double> alphas = {0.05, 0.1, 0.2, 0.3, 0.4};
    std::vector<double> errors;
    bool increasing = true;
    for (double a : alphas) {
        cfg.alpha = a;
        errors.push_back(mean_final_dist(cfg, threads));
        if (errors.size() > 1 && !(errors.back() > errors[errors.size() - 2]))
            increasing = false;
    }
    RateFit fit = rate_fit(alphas, errors, false, false);
    r.measured = fit.r_squared;
    r.pass = increasing && fit.slope > 0.0 && fit.r_squared >= 0.8;
    std::string errs;
    for (double e : errors) errs += fmt(e) + " ";
    r.detail = "errors " + errs + ", slope " + fmt(fit.slope);
    return r;
}

// 9. Attack-free mean-GD error scales like (nm)^{-1/2}.
CheckResult check_sample_size_scaling(int threads) {
    CheckResult r;
    r.name = "sample_size_scaling";
    r.threshold = "log-log slope in [-0.65, -0.35]";
    std::vector<std::pair<std::size_t, std::size_t>> cells = {
        {100, 10}, {200, 20}, {400, 40}};
    std::vector<double> nm, err;
    for (auto [n, m] : cells) {
        ExperimentConfig cfg = regression_scenario(10, n, m);
        cfg.seeds.clear();
        for (uint64_t s = 1; s <= 20; ++s) cfg.seeds.push_back(s);
        cfg.rule = agg::AggregationRule::mean();
        nm.push_back(static_cast<double>(n * m));
        err.push_back(mean_final_dist(cfg, threads));
    }
    RateFit fit = rate_fit(nm, err, true, true);
    r.measured = fit.slope;
    r.pass = fit.slope >= -0.65 && fit.slope <= -0.35;
    r.detail = "errors " + fmt(err[0]) + " " + fmt(err[1]) + " " + fmt(err[2]);
    return r;
}

// 10. Contraction shape: dist_to_opt decays monotonically to its terminal
// plateau (median of the last 10 rounds), then stays within 2x of it.
CheckResult check_contraction(int threads) {
    CheckResult r;
    r.name = "contraction_shape";
    r.threshold = "monotone to plateau, then <= 2 * plateau, all 10 seeds";
    ExperimentConfig cfg = regression_scenario(10, 200, 20);
    cfg.rule = agg::AggregationRule::median();
    auto model = make_model(cfg);
    bool all_ok = true;
    double worst = 0.0;
    for (uint64_t seed : cfg.seeds) {
        auto result = run_single(cfg, *model, seed, threads);
        std::vector<double> dist;
        for (const auto& rec : result.trajectory) dist.push_back(*rec.dist_to_opt);
        std::vector<double> tail(dist.end() - 10, dist.end());
        double plateau = agg::scalar_median(tail);
        std::size_t cross = dist.size();
        for (std::size_t t = 0; t < dist.size(); ++t) {
            if (dist[t] <= plateau) { cross = t; break; }
        }
        for (std::size_t t = 0; t + 1 <= cross && t + 1 < dist.size(); ++t) {
            if (dist[t + 1] > dist[t] * (1.0 + 1e-12)) all_ok = false;
        }
        for (std::size_t t = cross; t < dist.size(); ++t) {
            worst = std::max(worst, dist[t] / plateau);
            if (dist[t] > 2.0 * plateau) all_ok = false;
        }
    }
    r.measured = worst;
    r.pass = all_ok;
    r.detail = "worst post-crossing ratio " + fmt(worst);
    return r;
}

// 11. One-round median of local ERMs against 50 rounds of median-GD under a
// constant-vector attack; closed-form ERM against iterative ERM.
CheckResult check_one_round(int threads) {
    CheckResult r;
    r.name = "one_round_vs_iterative";
    r.threshold = "one-round error <= 3 * median-GD error, ERM gap <= 1e-6";
    ExperimentConfig cfg = regression_scenario(5, 500, 21);
    cfg.alpha = 4.5 / 21.0; // four Byzantine workers
    cfg.attack.kind = attack::AttackKind::ConstantVector;
    cfg.attack.constant.assign(5, 1e6);
    cfg.rule = agg::AggregationRule::median();
    auto model = make_model(cfg);

    double one_round_err = 0.0, gd_err = 0.0;
    for (uint64_t seed : cfg.seeds) {
        auto one = run_single_one_round(cfg, *model, seed, threads);
        one_round_err += norm2(one.final_w - cfg.data.w_star);
        auto gd = run_single(cfg, *model, seed, threads);
        gd_err += *gd.trajectory.back().dist_to_opt;
    }
    one_round_err /= static_cast<double>(cfg.seeds.size());
    gd_err /= static_cast<double>(cfg.seeds.size());

    // Closed-form vs iterative local ERM on every honest worker of one run.
    data::DataGenConfig dc = cfg.data;
    dc.seed = cfg.seeds.front();
    auto dataset = data::generate(cfg.generator, dc);
    auto assignment = attack::select_byzantine_set(dc.m, cfg.alpha, dc.seed);
    sim::OneRoundSettings closed, iterative;
    iterative.force_iterative = true;
    auto a = sim::run_one_round(*model, dataset, assignment, cfg.attack, closed,
                                dc.seed, threads);
    auto b = sim::run_one_round(*model, dataset, assignment, cfg.attack, iterative,
                                dc.seed, threads);
    double erm_gap = 0.0;
    for (std::size_t i = 0; i < dc.m; ++i) {
        if (assignment.is_byzantine(i)) continue;
        erm_gap = std::max(erm_gap, norm2(a.per_worker_erms[i] - b.per_worker_erms[i]));
    }

    r.measured = one_round_err / gd_err;
    r.pass = one_round_err <= 3.0 * gd_err && erm_gap <= 1e-6;
    r.detail = "one-round " + fmt(one_round_err) + ", median-GD " + fmt(gd_err) +
               ", ERM gap " + fmt(erm_gap);
    return r;
}

// 12. Label-flip logistic scenario: held-out accuracy advantage of the robust
// rules over the plain mean.
CheckResult check_label_flip_gap(int threads) {
    CheckResult r;
    r.name = "label_flip_accuracy_gap";
    r.threshold = "median and trimmed accuracy each >= mean accuracy + 0.05";
    ExperimentConfig cfg;
    cfg.scenario = "acceptance";
    cfg.generator = data::GeneratorKind::Logistic;
    cfg.data.d = 10;
    cfg.data.n = 500;
    cfg.data.m = 20;
    cfg.data.feature_law = data::FeatureLaw::StandardGaussian;
    cfg.data.w_star.assign(10, 3.0 / std::sqrt(10.0));
    cfg.alpha = 0.2;
    cfg.attack.kind = attack::AttackKind::LabelFlip;
    cfg.gd.rounds = 100;
    for (uint64_t s = 1; s <= 10; ++s) cfg.seeds.push_back(s);

    auto model = make_model(cfg);
    auto& logistic = dynamic_cast<losses::LogisticLoss&>(*model);

    auto avg_accuracy = [&](const agg::AggregationRule& rule) {
        ExperimentConfig run_cfg = cfg;
        run_cfg.rule = rule;
        double sum = 0.0;
        for (uint64_t seed : cfg.seeds) {
            auto result = run_single(run_cfg, *model, seed, threads);
            sum += logistic.heldout_accuracy(result.final_w);
        }
        return sum / static_cast<double>(cfg.seeds.size());
    };

    double acc_mean = avg_accuracy(agg::AggregationRule::mean());
    double acc_med = avg_accuracy(agg::AggregationRule::median());
    double acc_trim = avg_accuracy(agg::AggregationRule::trimmed_mean(0.2));

    r.measured = std::min(acc_med, acc_trim) - acc_mean;
    r.pass = acc_med - acc_mean >= 0.05 && acc_trim - acc_mean >= 0.05;
    r.detail = "mean " + fmt(acc_mean) + ", median " + fmt(acc_med) + ", trimmed " +
               fmt(acc_trim);
    return r;
}

Vector central_difference(const std::function<double(const Vector&)>& f,
                          const Vector& w, double step) {
    Vector g(w.size());
    Vector wp = w;
    for (std::size_t j = 0; j < w.size(); ++j) {
        double orig = wp[j];
        wp[j] = orig + step;
        double hi = f(wp);
        wp[j] = orig - step;
        double lo = f(wp);
        wp[j] = orig;
        g[j] = (hi - lo) / (2.0 * step);
    }
    return g;
}

// 13. Analytic gradients against central finite differences for the squared,
// logistic, and quadratic losses.
CheckResult check_gradients() {
    CheckResult r;
    r.name = "gradient_finite_differences";
    r.threshold = "relative error <= 1e-5 on 100 instances per loss";
    const double step = 1e-6;
    double worst = 0.0;

    losses::LinearRegressionLoss linreg(Vector(5, 0.0), 1.0);
    losses::LogisticLoss logistic(Vector(5, 0.0), 1, 0x13, 1);

    for (std::size_t iter = 0; iter < 100; ++iter) {
        RngStream rng(0xFD, iter);
        std::size_t d = 2 + rng.below(7);
        Vector w = rng.normal_vector(d);
        Vector w5 = rng.normal_vector(5);
        losses::DataPoint z;
        z.x = rng.normal_vector(5);
        z.y = rng.normal();
        auto rel_gap = [](const Vector& g, const Vector& fd) {
            return norm2(fd - g) / std::max(1.0, norm2(g));
        };
        worst = std::max(worst, rel_gap(
            linreg.sample_gradient(w5, z),
            central_difference([&](const Vector& u) { return linreg.sample_value(u, z); },
                               w5, step)));
        losses::DataPoint zc = z;
        zc.y = rng.bernoulli(0.5) ? 1.0 : 0.0;
        worst = std::max(worst, rel_gap(
            logistic.sample_gradient(w5, zc),
            central_difference(
                [&](const Vector& u) { return logistic.sample_value(u, zc); }, w5,
                step)));

        losses::QuadraticForm q;
        q.h = Matrix(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                double v = rng.normal();
                q.h(i, j) = v;
                q.h(j, i) = v;
            }
        q.p = rng.normal_vector(d);
        q.c = rng.normal();
        auto quad_value = [&](const Vector& u) {
            return 0.5 * dot(u, q.h.apply(u)) + dot(q.p, u) + q.c;
        };
        worst = std::max(worst, rel_gap(losses::quad_gradient(w, q),
                                        central_difference(quad_value, w, step)));
    }
    r.measured = worst;
    r.pass = worst <= 1e-5;
    r.detail = "worst relative gap " + fmt(worst);
    return r;
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Sweep rows carry a wall-clock runtime column that is nondeterministic by
// nature; the determinism comparison blanks it and compares everything else.
std::string mask_runtime(const std::string& csv_text) {
    csvio::Table table = csvio::parse(csv_text);
    for (auto& row : table.rows)
        if (!row.empty()) row.back() = "";
    return csvio::render(table);
}

// 14. Byte-identical outputs at thread counts 1 and 8 for both run and sweep.
CheckResult check_determinism() {
    CheckResult r;
    r.name = "determinism_across_threads";
    r.threshold = "identical CSV bytes at threads 1 and 8";
    const char* config_json = R"({
        "scenario": "determinism",
        "data": {"generator": "rademacher_regression", "d": 5, "n": 50, "m": 8,
                 "sigma": 1.0, "w_star": {"norm": 1.0}, "seed": 3},
        "alpha": 0.25,
        "attack": {"variant": "gaussian_message", "scale": 5.0},
        "rule": {"variant": "median"},
        "gd": {"eta": 1.0, "rounds": 10, "minibatch_fraction": 0.5},
        "seeds": [1, 2, 3],
        "sweep": {"axis": "alpha", "values": [0.0, 0.125, 0.25]}
    })";
    ExperimentConfig cfg = parse_config(config_json);

    fs::path base = fs::temp_directory_path() / "byzgd_determinism";
    fs::remove_all(base);
    std::string run1, run8, sweep1, sweep8;
    for (int threads : {1, 8}) {
        fs::path dir = base / ("t" + std::to_string(threads));
        fs::create_directories(dir);
        std::string traj = run_experiment(cfg, dir.string(), threads);
        std::string swp = run_sweep(cfg, dir.string(), threads);
        (threads == 1 ? run1 : run8) = read_bytes(traj);
        (threads == 1 ? sweep1 : sweep8) = mask_runtime(read_bytes(swp));
    }
    fs::remove_all(base);

    bool run_ok = !run1.empty() && run1 == run8;
    bool sweep_ok = !sweep1.empty() && sweep1 == sweep8;
    r.measured = (run_ok ? 0.0 : 1.0) + (sweep_ok ? 0.0 : 1.0);
    r.pass = run_ok && sweep_ok;
    r.detail = std::string("run ") + (run_ok ? "identical" : "DIFFERS") + ", sweep " +
               (sweep_ok ? "identical (runtime column excluded)" : "DIFFERS");
    return r;
}

} // namespace

std::vector<std::string> suite_names() {
    return {"aggregation", "statistics", "data", "convergence"};
}

std::vector<CheckResult> verify_suite(const std::string& name, int threads) {
    if (name == "aggregation")
        return {check_aggregator_oracle(), check_trimmed_bound()};
    if (name == "statistics")
        return {check_c_epsilon(), check_sub_exponential(), check_median_of_means()};
    if (name == "data")
        return {check_noise_statistics(), check_gradients(), check_determinism()};
    if (name == "convergence")
        return {check_robust_convergence(threads), check_alpha_scaling(threads),
                check_sample_size_scaling(threads), check_contraction(threads),
                check_one_round(threads), check_label_flip_gap(threads)};
    throw InvalidArgument("verify_suite: unknown suite '" + name + "'");
}

std::string format_check(const CheckResult& check) {
    return std::string(check.pass ? "[PASS] " : "[FAIL] ") + check.name + ": " +
           fmt(check.measured) + " (" + check.threshold + ") " + check.detail;
}

int run_verification(const std::vector<std::string>& suites, int threads,
                     const ReportSink& sink) {
    std::vector<std::string> names = suites.empty() ? suite_names() : suites;
    int failures = 0;
    for (const auto& name : names) {
        for (const auto& check : verify_suite(name, threads)) {
            if (!check.pass) ++failures;
            if (sink) sink(format_check(check));
        }
    }
    return failures;
}

} // namespace byzgd::harness
