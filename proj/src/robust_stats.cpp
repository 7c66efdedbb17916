#include "byzgd/robust_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "byzgd/aggregation.hpp"
#include "byzgd/rng.hpp"

namespace byzgd::stats {

namespace {

constexpr double kBerryEsseen = 0.4748;
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

double require(const std::optional<double>& v, const char* what) {
    if (!v)
        throw InvalidArgument(std::string("unsupported: tail parameter ") + what +
                              " is unknown");
    return *v;
}

} // namespace

void BoundInputs::validate() const {
    if (!(alpha >= 0.0 && alpha < 0.5))
        throw InvalidArgument("BoundInputs: alpha must be in [0, 1/2)");
    if (n < 1 || m < 1 || d < 1)
        throw InvalidArgument("BoundInputs: n, m, d must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw InvalidArgument("BoundInputs: epsilon must be in (0, 1/2)");
    if (!(l_hat > 0.0))
        throw InvalidArgument("BoundInputs: L_hat must be positive");
    if (!(diameter > 0.0))
        throw InvalidArgument("BoundInputs: diameter must be positive");
    if (beta && !(*beta >= 0.0 && *beta < 0.5))
        throw InvalidArgument("BoundInputs: beta must be in [0, 1/2)");
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw InvalidArgument("inverse_normal_cdf: p must be in (0, 1)");

    // Acklam's rational minimax approximation (~1.15e-9 relative), then one
    // Newton step against the exact CDF via erfc.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    }
    double density = std::exp(-0.5 * x * x) / kSqrt2Pi;
    if (density > 0.0) x -= (normal_cdf(x) - p) / density;
    return x;
}

double c_epsilon(double eps) {
    if (!(eps > 0.0 && eps < 0.5))
        throw InvalidArgument("c_epsilon: epsilon must be in (0, 1/2)");
    double q = inverse_normal_cdf(1.0 - eps);
    return kSqrt2Pi * std::exp(0.5 * q * q);
}

namespace {

double nm_log_term(const BoundInputs& in) {
    double nm = static_cast<double>(in.n) * static_cast<double>(in.m);
    return std::log(1.0 + nm * in.l_hat * in.diameter);
}

// alpha + sqrt(d log(1+nm L D)/(m(1-alpha))) + 0.4748 S / sqrt(n)
double median_condition_lhs(const BoundInputs& in, double skew) {
    double dim_term = std::sqrt(static_cast<double>(in.d) * nm_log_term(in) /
                                (static_cast<double>(in.m) * (1.0 - in.alpha)));
    return in.alpha + dim_term + kBerryEsseen * skew / std::sqrt(static_cast<double>(in.n));
}

} // namespace

double feasibility_margin(const BoundInputs& in) {
    in.validate();
    double skew = require(in.tail.skewness_bound, "S");
    return (0.5 - in.epsilon) - median_condition_lhs(in, skew);
}

TheoreticalBound median_bound_delta(const BoundInputs& in) {
    in.validate();
    double var = require(in.tail.variance_bound, "V");
    double skew = require(in.tail.skewness_bound, "S");

    double n = static_cast<double>(in.n);
    double nm = n * static_cast<double>(in.m);
    double ce = c_epsilon(in.epsilon);
    double pre = kSqrt2 * ce * var / std::sqrt(n);

    double dim_term = std::sqrt(static_cast<double>(in.d) * nm_log_term(in) /
                                (static_cast<double>(in.m) * (1.0 - in.alpha)));
    TheoreticalBound out;
    out.inputs = in;
    out.components = {
        {"base_term", 2.0 * kSqrt2 / nm},
        {"alpha_term", pre * in.alpha},
        {"dimension_term", pre * dim_term},
        {"skewness_term", pre * kBerryEsseen * skew / std::sqrt(n)},
    };
    out.value = 0.0;
    for (const auto& comp : out.components) out.value += comp.value;
    out.feasibility_warned = feasibility_margin(in) < 0.0;
    return out;
}

TheoreticalBound trimmed_bound_delta(const BoundInputs& in) {
    in.validate();
    double v = require(in.tail.sub_exp, "v");
    if (!in.beta)
        throw InvalidArgument("trimmed_bound_delta: beta required");
    double beta = *in.beta;
    if (beta < in.alpha)
        throw InvalidArgument("trimmed_bound_delta: robustness requires alpha <= beta");
    if (beta > 0.5 - in.epsilon)
        throw InvalidArgument("trimmed_bound_delta: requires beta <= 1/2 - epsilon");

    double n = static_cast<double>(in.n);
    double d = static_cast<double>(in.d);
    double nm = n * static_cast<double>(in.m);
    double log_factor = std::sqrt(nm_log_term(in) + std::log(static_cast<double>(in.m)) / d);
    double pre = v / in.epsilon;

    TheoreticalBound out;
    out.inputs = in;
    out.components = {
        {"beta_term", pre * 3.0 * kSqrt2 * beta * d / std::sqrt(n) * log_factor},
        {"sample_term", pre * 2.0 * d / std::sqrt(nm) * log_factor},
    };
    out.value = out.components[0].value + out.components[1].value;
    out.higher_order_omitted = true;
    return out;
}

double empirical_variance(const std::vector<Vector>& samples) {
    if (samples.size() < 2)
        throw InvalidArgument("empirical_variance: need at least 2 samples");
    std::size_t d = samples.front().size();
    Vector mean(d, 0.0);
    for (const auto& s : samples) axpy(1.0, s, mean);
    double inv_n = 1.0 / static_cast<double>(samples.size());
    for (auto& x : mean) x *= inv_n;
    double acc = 0.0;
    for (const auto& s : samples) {
        for (std::size_t k = 0; k < d; ++k) {
            double dev = s[k] - mean[k];
            acc += dev * dev;
        }
    }
    return acc * inv_n;
}

Vector empirical_abs_skewness(const std::vector<Vector>& samples) {
    if (samples.size() < 2)
        throw InvalidArgument("empirical_abs_skewness: need at least 2 samples");
    std::size_t d = samples.front().size();
    double inv_n = 1.0 / static_cast<double>(samples.size());
    Vector mean(d, 0.0);
    for (const auto& s : samples) axpy(1.0, s, mean);
    for (auto& x : mean) x *= inv_n;

    Vector m2(d, 0.0), m3(d, 0.0);
    for (const auto& s : samples) {
        for (std::size_t k = 0; k < d; ++k) {
            double dev = s[k] - mean[k];
            double dev2 = dev * dev;
            m2[k] += dev2;
            m3[k] += dev2 * std::fabs(dev);
        }
    }
    Vector out(d);
    for (std::size_t k = 0; k < d; ++k) {
        double var = m2[k] * inv_n;
        if (var <= 0.0)
            throw InvalidArgument("empirical_abs_skewness: zero variance at coordinate " +
                                  std::to_string(k));
        out[k] = (m3[k] * inv_n) / std::pow(var, 1.5);
    }
    return out;
}

SubExponentialReport sub_exponential_check(const std::vector<double>& samples,
                                           double v,
                                           const std::vector<double>& lambda_grid,
                                           double tolerance) {
    if (samples.size() < 100)
        throw InvalidArgument("sub_exponential_check: need at least 100 samples");
    if (!(v > 0.0))
        throw InvalidArgument("sub_exponential_check: v must be positive");
    for (double lambda : lambda_grid)
        if (!(std::fabs(lambda) < 1.0 / v))
            throw InvalidArgument("sub_exponential_check: grid point with |lambda| >= 1/v");

    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(samples.size());

    SubExponentialReport report;
    report.pass = true;
    for (double lambda : lambda_grid) {
        double mgf = 0.0;
        for (double x : samples) mgf += std::exp(lambda * (x - mean));
        mgf /= static_cast<double>(samples.size());
        double bound = std::exp(0.5 * v * v * lambda * lambda);
        double ratio = mgf / bound;
        report.worst_ratio = std::max(report.worst_ratio, ratio);
        if (mgf > bound * (1.0 + tolerance)) report.pass = false;
    }
    return report;
}

MedianOfMeansReport verify_median_of_means(const ScalarDistribution& dist,
                                           const MedianOfMeansParams& params) {
    if (params.trials < 500)
        throw InvalidArgument("verify_median_of_means: need at least 500 trials");
    if (!(params.alpha >= 0.0 && params.alpha < 0.5))
        throw InvalidArgument("verify_median_of_means: alpha must be in [0, 1/2)");
    if (!(params.epsilon > 0.0 && params.epsilon < 0.5))
        throw InvalidArgument("verify_median_of_means: epsilon must be in (0, 1/2)");
    if (!dist.sample)
        throw InvalidArgument("verify_median_of_means: sampler required");

    double n = static_cast<double>(params.n);
    double m = static_cast<double>(params.m);
    double lhs = params.alpha + std::sqrt(params.t / (m * (1.0 - params.alpha))) +
                 0.4748 * dist.abs_skewness / std::sqrt(n);

    MedianOfMeansReport report;
    report.premise_margin = (0.5 - params.epsilon) - lhs;
    if (report.premise_margin < 0.0 && params.enforce_premise)
        throw InvalidArgument("verify_median_of_means: concentration premise violated "
                              "(margin " + std::to_string(report.premise_margin) + ")");

    report.bound_value = c_epsilon(params.epsilon) * dist.sigma / std::sqrt(n) * lhs;
    report.bound_rate = 4.0 * std::exp(-2.0 * params.t);

    std::size_t n_byz = static_cast<std::size_t>(params.alpha * m);
    double byz_value = dist.mu + params.outlier_scale * dist.sigma;

    std::size_t violations = 0;
    std::vector<double> machine_means(params.m);
    for (std::size_t trial = 0; trial < params.trials; ++trial) {
        for (std::size_t i = 0; i < params.m; ++i) {
            if (i < n_byz) { // placement is irrelevant: the median is permutation invariant
                machine_means[i] = byz_value;
                continue;
            }
            RngStream rng(params.seed, trial, i);
            double sum = 0.0;
            for (std::size_t j = 0; j < params.n; ++j) sum += dist.sample(rng);
            machine_means[i] = sum / n;
        }
        double med = agg::scalar_median(machine_means);
        if (std::fabs(med - dist.mu) > report.bound_value) ++violations;
    }
    report.violation_rate = static_cast<double>(violations) / static_cast<double>(params.trials);
    return report;
}

double estimate_one_round_sigma(const QuadSampler& sampler, const Matrix& h_pop,
                                const Vector& p_pop, std::size_t n_samples,
                                uint64_t seed) {
    if (n_samples < 100)
        throw InvalidArgument("estimate_one_round_sigma: need at least 100 samples");
    if (h_pop.n() != p_pop.size())
        throw InvalidArgument("estimate_one_round_sigma: dimension mismatch");

    // u = H_F^{-1} p_F, reused across draws.
    Vector u = solve_linear(h_pop, p_pop);

    double acc = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        RngStream rng(seed, i);
        auto [h, p] = sampler(rng);
        Matrix dh = h - h_pop;
        Vector r = dh.apply(u);
        for (std::size_t k = 0; k < r.size(); ++k) r[k] -= p[k] - p_pop[k];
        Vector y = solve_linear(h_pop, r);
        acc += dot(y, y);
    }
    return std::sqrt(acc / static_cast<double>(n_samples));
}

} // namespace byzgd::stats
