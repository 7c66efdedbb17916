#include "byzgd/losses.hpp"

#include <cmath>
#include <string>

#include "byzgd/rng.hpp"

namespace byzgd::losses {

double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    double e = std::exp(t);
    return e / (1.0 + e);
}

Vector linreg_gradient(const Vector& w, const DataPoint& z) {
    if (w.size() != z.x.size())
        throw InvalidArgument("linreg_gradient: dimension mismatch");
    double residual = dot(z.x, w) - z.y;
    return residual * z.x;
}

Vector linreg_population_gradient(const Vector& w, const Vector& w_star) {
    return w - w_star;
}

Vector logistic_gradient(const Vector& w, const DataPoint& z) {
    if (w.size() != z.x.size())
        throw InvalidArgument("logistic_gradient: dimension mismatch");
    double residual = sigmoid(dot(z.x, w)) - z.y;
    return residual * z.x;
}

Vector quad_gradient(const Vector& w, const QuadraticForm& q) {
    if (w.size() != q.p.size() || w.size() != q.h.n())
        throw InvalidArgument("quad_gradient: dimension mismatch");
    Vector g = q.h.apply(w);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] += q.p[k];
    return g;
}

Vector local_empirical_gradient(const LossModel& model, const Vector& w,
                                const Shard& shard) {
    if (shard.empty())
        throw InvalidArgument("local_empirical_gradient: empty shard");
    Vector sum(w.size(), 0.0);
    for (const auto& z : shard) axpy(1.0, model.sample_gradient(w, z), sum);
    double inv = 1.0 / static_cast<double>(shard.size());
    for (auto& x : sum) x *= inv;
    return sum;
}

Vector local_erm_quadratic(const Matrix& h, const Vector& p) {
    if (!h.symmetric(1e-9))
        throw InvalidArgument("local_erm_quadratic: H must be symmetric");
    Vector neg_p(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) neg_p[k] = -p[k];
    Vector w = solve_linear(h, neg_p);
    // Residual check against an indefinite H slipping through elimination.
    Vector hw = h.apply(w);
    double res = 0.0, wn = norm2(w), pn = norm2(p);
    for (std::size_t k = 0; k < p.size(); ++k) {
        double r = hw[k] + p[k];
        res += r * r;
    }
    res = std::sqrt(res);
    if (res > 1e-8 * (h.max_abs() * wn + pn + 1.0))
        throw NumericalFailure("local_erm_quadratic: residual too large (" +
                               std::to_string(res) + ")");
    return w;
}

ErmResult local_erm_iterative(const LossModel& model, const Shard& shard,
                              const Vector& w0, const ErmSettings& settings) {
    if (shard.empty())
        throw InvalidArgument("local_erm_iterative: empty shard");
    double eta = settings.eta > 0.0 ? settings.eta
                                    : 1.0 / model.smoothness().population_smoothness;
    ErmResult result;
    result.w = w0;
    for (std::size_t it = 0; it <= settings.max_iters; ++it) {
        Vector g = local_empirical_gradient(model, result.w, shard);
        result.grad_norm = norm2(g);
        result.iters = it;
        if (result.grad_norm <= settings.grad_tol || it == settings.max_iters) break;
        axpy(-eta, g, result.w);
        if (!all_finite(result.w))
            throw NumericalFailure("local_erm_iterative: non-finite iterate at step " +
                                   std::to_string(it));
    }
    return result;
}

LinearRegressionLoss::LinearRegressionLoss(Vector w_star, double sigma)
    : w_star_(std::move(w_star)), sigma_(sigma) {
    smoothness_.population_smoothness = 1.0;
    smoothness_.strong_convexity = 1.0;
    // L_k <= |x_k| * ||x|| <= sqrt(d) per coordinate for unit-scale features.
    smoothness_.stacked_lipschitz = static_cast<double>(w_star_.size());
}

double LinearRegressionLoss::sample_value(const Vector& w, const DataPoint& z) const {
    double residual = z.y - dot(z.x, w);
    return 0.5 * residual * residual;
}

Vector LinearRegressionLoss::sample_gradient(const Vector& w, const DataPoint& z) const {
    return linreg_gradient(w, z);
}

std::optional<Vector> LinearRegressionLoss::population_gradient(const Vector& w) const {
    return linreg_population_gradient(w, w_star_);
}

std::optional<double> LinearRegressionLoss::population_value(const Vector& w) const {
    Vector diff = w - w_star_;
    return 0.5 * dot(diff, diff) + 0.5 * sigma_ * sigma_;
}

std::optional<QuadraticForm> LinearRegressionLoss::shard_quadratic(const Shard& shard) const {
    if (shard.empty())
        throw InvalidArgument("shard_quadratic: empty shard");
    std::size_t d = shard.front().x.size();
    QuadraticForm q;
    q.h = Matrix(d);
    q.p = Vector(d, 0.0);
    double inv = 1.0 / static_cast<double>(shard.size());
    for (const auto& z : shard) {
        for (std::size_t i = 0; i < d; ++i) {
            q.p[i] -= z.y * z.x[i];
            for (std::size_t j = 0; j < d; ++j) q.h(i, j) += z.x[i] * z.x[j];
        }
        q.c += 0.5 * z.y * z.y;
    }
    q.h *= inv;
    for (auto& x : q.p) x *= inv;
    q.c *= inv;
    return q;
}

LogisticLoss::LogisticLoss(Vector w_star, int feature_law, uint64_t heldout_seed,
                           std::size_t heldout_size)
    : w_star_(std::move(w_star)) {
    // L_F <= lambda_max(E[xx']) / 4 = 1/4 for unit-covariance features.
    smoothness_.population_smoothness = 0.25;
    smoothness_.strong_convexity = 0.0;
    smoothness_.stacked_lipschitz = static_cast<double>(w_star_.size()) / 4.0;

    std::size_t d = w_star_.size();
    heldout_.reserve(heldout_size);
    for (std::size_t i = 0; i < heldout_size; ++i) {
        RngStream rng(heldout_seed, 0x48454c44ull /* stream tag */, i);
        DataPoint z;
        z.x.resize(d);
        for (auto& x : z.x) x = feature_law == 0 ? rng.rademacher() : rng.normal();
        z.y = rng.bernoulli(sigmoid(dot(z.x, w_star_))) ? 1.0 : 0.0;
        heldout_.push_back(std::move(z));
    }
}

double LogisticLoss::sample_value(const Vector& w, const DataPoint& z) const {
    double t = dot(z.x, w);
    // -[y log s + (1-y) log(1-s)] = log(1+e^t) - y t, computed stably.
    double log1pexp = t > 30.0 ? t : std::log1p(std::exp(t));
    return log1pexp - z.y * t;
}

Vector LogisticLoss::sample_gradient(const Vector& w, const DataPoint& z) const {
    return logistic_gradient(w, z);
}

std::optional<double> LogisticLoss::population_value(const Vector& w) const {
    double acc = 0.0;
    for (const auto& z : heldout_) acc += sample_value(w, z);
    return acc / static_cast<double>(heldout_.size());
}

std::optional<Vector> LogisticLoss::population_gradient(const Vector& w) const {
    return local_empirical_gradient(*this, w, heldout_);
}

double LogisticLoss::heldout_accuracy(const Vector& w) const {
    std::size_t correct = 0;
    for (const auto& z : heldout_) {
        double predicted = dot(z.x, w) > 0.0 ? 1.0 : 0.0;
        if (predicted == z.y) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(heldout_.size());
}

} // namespace byzgd::losses
