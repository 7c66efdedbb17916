#ifndef BYZGD_LOSSES_HPP
#define BYZGD_LOSSES_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "byzgd/linalg.hpp"
#include "byzgd/vec.hpp"

namespace byzgd::losses {

struct DataPoint {
    Vector x;
    double y = 0.0;
};

using Shard = std::vector<DataPoint>;

// Smoothness constants of the loss family. Invariant when all are known:
// lambda_F <= L_F <= L_hat.
struct SmoothnessProfile {
    double population_smoothness = 1.0;   // L_F
    double strong_convexity = 0.0;        // lambda_F, 0 if unknown
    double stacked_lipschitz = 1.0;       // L_hat = sqrt(sum L_k^2)
    std::optional<double> grad_norm_bound; // M, if known
};

// f(w; z) = 1/2 w'Hw + p'w + c.
struct QuadraticForm {
    Matrix h;
    Vector p;
    double c = 0.0;
};

// Per-sample loss with optional population-level knowledge. Instances are
// immutable after construction and safe for concurrent use.
class LossModel {
public:
    virtual ~LossModel() = default;

    virtual double sample_value(const Vector& w, const DataPoint& z) const = 0;
    virtual Vector sample_gradient(const Vector& w, const DataPoint& z) const = 0;

    const SmoothnessProfile& smoothness() const { return smoothness_; }

    virtual std::optional<Vector> population_optimum() const { return std::nullopt; }
    virtual std::optional<Vector> population_gradient(const Vector&) const { return std::nullopt; }
    virtual std::optional<double> population_value(const Vector&) const { return std::nullopt; }

    // Empirical quadratic form of a shard, when the loss is quadratic in w.
    virtual std::optional<QuadraticForm> shard_quadratic(const Shard&) const { return std::nullopt; }

protected:
    SmoothnessProfile smoothness_;
};

// Squared loss 1/2 (y - x'w)^2 on y = x'w* + noise with unit-covariance
// features, so the population gradient is w - w* and L_F = lambda_F = 1.
class LinearRegressionLoss : public LossModel {
public:
    LinearRegressionLoss(Vector w_star, double sigma);

    double sample_value(const Vector& w, const DataPoint& z) const override;
    Vector sample_gradient(const Vector& w, const DataPoint& z) const override;
    std::optional<Vector> population_optimum() const override { return w_star_; }
    std::optional<Vector> population_gradient(const Vector& w) const override;
    std::optional<double> population_value(const Vector& w) const override;
    std::optional<QuadraticForm> shard_quadratic(const Shard& shard) const override;

private:
    Vector w_star_;
    double sigma_;
};

// Binary logistic negative log-likelihood on y ~ Bernoulli(sigmoid(x'w*)).
// Population metrics are estimated on a fixed seeded held-out set so curves
// within a run are internally comparable.
class LogisticLoss : public LossModel {
public:
    // feature_law: 0 = Rademacher, 1 = standard Gaussian (matches synth_data).
    LogisticLoss(Vector w_star, int feature_law, uint64_t heldout_seed,
                 std::size_t heldout_size = 100000);

    double sample_value(const Vector& w, const DataPoint& z) const override;
    Vector sample_gradient(const Vector& w, const DataPoint& z) const override;
    std::optional<Vector> population_optimum() const override { return w_star_; }
    std::optional<double> population_value(const Vector& w) const override;
    std::optional<Vector> population_gradient(const Vector& w) const override;

    // Fraction of held-out labels matched by thresholding sigmoid(x'w) at 1/2.
    double heldout_accuracy(const Vector& w) const;

private:
    Vector w_star_;
    std::vector<DataPoint> heldout_;
};

double sigmoid(double t);

// x * (x'w - y)
Vector linreg_gradient(const Vector& w, const DataPoint& z);

// w - w_star (unit-covariance feature law)
Vector linreg_population_gradient(const Vector& w, const Vector& w_star);

// x * (sigmoid(x'w) - y)
Vector logistic_gradient(const Vector& w, const DataPoint& z);

// H w + p
Vector quad_gradient(const Vector& w, const QuadraticForm& q);

// (1/n) sum of per-sample gradients over the shard.
Vector local_empirical_gradient(const LossModel& model, const Vector& w,
                                const Shard& shard);

// Closed-form ERM of a strongly convex quadratic: solves H w = -p.
Vector local_erm_quadratic(const Matrix& h, const Vector& p);

struct ErmSettings {
    double eta = 0.0;          // 0 means 1/L_F
    std::size_t max_iters = 100000;
    double grad_tol = 1e-8;
};

struct ErmResult {
    Vector w;
    double grad_norm = 0.0;
    std::size_t iters = 0;
};

// Full-batch gradient descent on the shard's empirical risk.
ErmResult local_erm_iterative(const LossModel& model, const Shard& shard,
                              const Vector& w0, const ErmSettings& settings);

} // namespace byzgd::losses

#endif
