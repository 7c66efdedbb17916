#ifndef BYZGD_ROBUST_STATS_HPP
#define BYZGD_ROBUST_STATS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "byzgd/linalg.hpp"
#include "byzgd/rng.hpp"
#include "byzgd/vec.hpp"

namespace byzgd::stats {

// Tail bounds on the gradient distribution. Each may be unknown; the bound
// calculators report "unsupported" when a required parameter is missing.
struct GradientTailProfile {
    std::optional<double> variance_bound;  // V: sqrt bound on Var(grad f)
    std::optional<double> skewness_bound;  // S: coordinate-wise abs skewness
    std::optional<double> sub_exp;         // v: sub-exponential parameter
};

struct BoundInputs {
    double alpha = 0.0;                // Byzantine fraction, [0, 1/2)
    std::optional<double> beta;        // trim fraction, needed for trimmed bound
    std::size_t n = 1;                 // samples per worker
    std::size_t m = 1;                 // workers
    std::size_t d = 1;                 // dimension
    double epsilon = 1.0 / 6.0;        // margin, (0, 1/2)
    double l_hat = 1.0;                // stacked Lipschitz constant
    double diameter = 1.0;             // parameter-space diameter D
    GradientTailProfile tail;

    void validate() const;
};

struct BoundComponent {
    std::string name;
    double value;
};

// An evaluated deviation bound with its addends broken out so readers can see
// how each term contributes.
struct TheoreticalBound {
    double value = 0.0;
    std::vector<BoundComponent> components;
    BoundInputs inputs;
    bool feasibility_warned = false;   // median bound: condition margin < 0
    bool higher_order_omitted = false; // trimmed bound: O(beta/n + 1/nm) addend dropped
};

// Inverse standard normal CDF, absolute error <= 1e-8 (rational approximation
// refined by one Newton step against erfc).
double inverse_normal_cdf(double p);

// Standard normal CDF, for oracles and refinement.
double normal_cdf(double x);

// sqrt(2*pi) * exp((Phi^-1(1-eps))^2 / 2). Strictly decreasing on (0, 1/2).
double c_epsilon(double eps);

// (1/2 - eps) - [alpha + sqrt(d log(1+nm L D)/(m(1-alpha))) + 0.4748 S/sqrt(n)].
// Nonnegative iff the median-based feasibility condition holds.
double feasibility_margin(const BoundInputs& in);

// Explicit deviation bound for the coordinate-wise median gradient estimate:
//   2*sqrt(2)/(nm)
//   + sqrt(2) C_eps V / sqrt(n) * (alpha + sqrt(d log(1+nm L D)/(m(1-alpha)))
//                                  + 0.4748 S / sqrt(n)).
TheoreticalBound median_bound_delta(const BoundInputs& in);

// Leading term of the trimmed-mean deviation bound:
//   (v/eps) (3 sqrt(2) beta d / sqrt(n) + 2 d / sqrt(nm))
//   * sqrt(log(1+nm L D) + log(m)/d).
TheoreticalBound trimmed_bound_delta(const BoundInputs& in);

// (1/N) sum ||x_i - mean||^2 over vector samples (population normalization).
double empirical_variance(const std::vector<Vector>& samples);

// Per coordinate: (1/N) sum |x - mean|^3 / variance^{3/2}. Throws on a
// zero-variance coordinate, naming it.
Vector empirical_abs_skewness(const std::vector<Vector>& samples);

struct SubExponentialReport {
    bool pass = false;
    double worst_ratio = 0.0; // max over grid of empirical MGF / bound
};

// Compares the empirical centered MGF against exp(v^2 lambda^2 / 2) on the
// grid; pass iff empirical <= bound * (1 + tolerance) everywhere.
SubExponentialReport sub_exponential_check(const std::vector<double>& samples,
                                           double v,
                                           const std::vector<double>& lambda_grid,
                                           double tolerance = 0.1);

// One-dimensional sampler with its known population statistics.
struct ScalarDistribution {
    double mu = 0.0;
    double sigma = 1.0;
    double abs_skewness = 1.0;
    std::function<double(RngStream&)> sample;
};

struct MedianOfMeansParams {
    std::size_t n = 1;        // samples per machine
    std::size_t m = 1;        // machines
    double alpha = 0.0;       // Byzantine fraction (floor(alpha*m) machines)
    double t = 1.0;           // concentration parameter
    double epsilon = 1.0 / 6.0;
    std::size_t trials = 500;
    uint64_t seed = 0;
    double outlier_scale = 1e6; // Byzantine machines send outlier_scale * sigma
    bool enforce_premise = true;
};

struct MedianOfMeansReport {
    double violation_rate = 0.0;
    double bound_rate = 0.0;     // 4 e^{-2t}
    double bound_value = 0.0;    // the deviation threshold tested each trial
    double premise_margin = 0.0; // (1/2 - eps) - premise left-hand side
};

// Monte Carlo check of the median-of-means concentration bound: simulates
// trials of m machines x n samples with floor(alpha*m) machines replaced by
// constant outliers, and counts trials where the median of machine means
// deviates from mu by more than
//   C_eps (sigma/sqrt(n)) (alpha + sqrt(t/(m(1-alpha))) + 0.4748 gamma/sqrt(n)).
MedianOfMeansReport verify_median_of_means(const ScalarDistribution& dist,
                                           const MedianOfMeansParams& params);

// Sampler of empirical (H, p) pairs for the one-round analysis.
using QuadSampler = std::function<std::pair<Matrix, Vector>(RngStream&)>;

// Monte Carlo estimate of sigma-tilde, the per-machine ERM dispersion:
//   sigma^2 = E || H_F^{-1} ((H - H_F) H_F^{-1} p_F - (p - p_F)) ||^2.
// Uses linear solves against H_F, never explicit inversion.
double estimate_one_round_sigma(const QuadSampler& sampler, const Matrix& h_pop,
                                const Vector& p_pop, std::size_t n_samples,
                                uint64_t seed);

} // namespace byzgd::stats

#endif
