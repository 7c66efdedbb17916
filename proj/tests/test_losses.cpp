#include <doctest.h>

#include <cmath>
#include <functional>

#include "byzgd/losses.hpp"
#include "byzgd/rng.hpp"

using namespace byzgd;
using namespace byzgd::losses;

namespace {

Vector finite_difference(const std::function<double(const Vector&)>& f,
                         Vector w, double step) {
    Vector g(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        double orig = w[j];
        w[j] = orig + step;
        double hi = f(w);
        w[j] = orig - step;
        double lo = f(w);
        w[j] = orig;
        g[j] = (hi - lo) / (2.0 * step);
    }
    return g;
}

} // namespace

TEST_CASE("sigmoid is stable at extreme inputs") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(1000.0) == doctest::Approx(1.0));
    CHECK(sigmoid(-1000.0) == doctest::Approx(0.0));
    CHECK(std::isfinite(sigmoid(-1000.0)));
    CHECK(sigmoid(2.0) + sigmoid(-2.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("squared loss gradient matches finite differences") {
    LinearRegressionLoss model(Vector(4, 0.0), 1.0);
    for (std::size_t iter = 0; iter < 20; ++iter) {
        RngStream rng(101, iter);
        Vector w = rng.normal_vector(4);
        DataPoint z{rng.normal_vector(4), rng.normal()};
        Vector g = model.sample_gradient(w, z);
        Vector fd = finite_difference(
            [&](const Vector& u) { return model.sample_value(u, z); }, w, 1e-6);
        CHECK(norm2(fd - g) <= 1e-5 * std::max(1.0, norm2(g)));
    }
}

TEST_CASE("logistic gradient matches finite differences") {
    LogisticLoss model(Vector(4, 0.0), 1, 0x99, 1);
    for (std::size_t iter = 0; iter < 20; ++iter) {
        RngStream rng(102, iter);
        Vector w = rng.normal_vector(4);
        DataPoint z{rng.normal_vector(4), rng.bernoulli(0.5) ? 1.0 : 0.0};
        Vector g = model.sample_gradient(w, z);
        Vector fd = finite_difference(
            [&](const Vector& u) { return model.sample_value(u, z); }, w, 1e-6);
        CHECK(norm2(fd - g) <= 1e-5 * std::max(1.0, norm2(g)));
    }
}

TEST_CASE("quadratic gradient matches finite differences") {
    for (std::size_t iter = 0; iter < 20; ++iter) {
        RngStream rng(103, iter);
        std::size_t d = 2 + rng.below(5);
        QuadraticForm q;
        q.h = Matrix(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                double v = rng.normal();
                q.h(i, j) = v;
                q.h(j, i) = v;
            }
        q.p = rng.normal_vector(d);
        q.c = rng.normal();
        Vector w = rng.normal_vector(d);
        Vector g = quad_gradient(w, q);
        Vector fd = finite_difference(
            [&](const Vector& u) {
                return 0.5 * dot(u, q.h.apply(u)) + dot(q.p, u) + q.c;
            },
            w, 1e-6);
        CHECK(norm2(fd - g) <= 1e-5 * std::max(1.0, norm2(g)));
    }
}

TEST_CASE("population gradient vanishes at the optimum") {
    RngStream rng(104, 0);
    Vector w_star = rng.normal_vector(5);
    LinearRegressionLoss linreg(w_star, 0.7);
    CHECK(norm2(*linreg.population_gradient(w_star)) == 0.0);
    CHECK(*linreg.population_value(w_star) ==
          doctest::Approx(0.5 * 0.49).epsilon(1e-12));

    Vector w_star_strong(5, 3.0);
    LogisticLoss logistic(w_star_strong, 1, 0x77, 20000);
    CHECK(norm2(*logistic.population_gradient(w_star_strong)) < 0.05);
    CHECK(logistic.heldout_accuracy(w_star_strong) > 0.8);
}

TEST_CASE("local empirical gradient") {
    LinearRegressionLoss model(Vector(3, 0.0), 1.0);
    RngStream rng(105, 0);
    Vector w = rng.normal_vector(3);

    Shard single = {DataPoint{rng.normal_vector(3), rng.normal()}};
    CHECK(local_empirical_gradient(model, w, single) ==
          model.sample_gradient(w, single[0]));

    Shard repeated(7, single[0]);
    Vector rep = local_empirical_gradient(model, w, repeated);
    Vector one = model.sample_gradient(w, single[0]);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(rep[k] == doctest::Approx(one[k]).epsilon(1e-14));

    Shard mixed;
    for (int i = 0; i < 9; ++i) mixed.push_back({rng.normal_vector(3), rng.normal()});
    Vector got = local_empirical_gradient(model, w, mixed);
    Vector expect(3, 0.0);
    for (const auto& z : mixed) axpy(1.0 / 9.0, model.sample_gradient(w, z), expect);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(got[k] == doctest::Approx(expect[k]).epsilon(1e-12));

    CHECK_THROWS_AS(local_empirical_gradient(model, w, Shard{}), InvalidArgument);
}

TEST_CASE("closed-form quadratic ERM") {
    Matrix h = Matrix::identity(3);
    h *= 2.0;
    Vector p = {-2.0, 4.0, 0.0};
    Vector w = local_erm_quadratic(h, p); // solves 2w = -p
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(w[2] == 0.0);

    Matrix skew(2);
    skew(0, 1) = 1.0; // not symmetric
    CHECK_THROWS_AS(local_erm_quadratic(skew, Vector(2, 1.0)), InvalidArgument);

    Matrix singular(2); // zero matrix
    CHECK_THROWS_AS(local_erm_quadratic(singular, Vector(2, 1.0)), NumericalFailure);
}

TEST_CASE("iterative ERM matches the closed form on a quadratic shard") {
    RngStream rng(106, 0);
    Vector w_star = rng.normal_vector(4);
    LinearRegressionLoss model(w_star, 0.5);
    Shard shard;
    for (int i = 0; i < 200; ++i) {
        DataPoint z;
        z.x.resize(4);
        for (auto& x : z.x) x = rng.rademacher();
        z.y = dot(z.x, w_star) + 0.5 * rng.normal();
        shard.push_back(std::move(z));
    }
    auto q = model.shard_quadratic(shard);
    REQUIRE(q.has_value());
    Vector closed = local_erm_quadratic(q->h, q->p);

    ErmSettings settings;
    settings.grad_tol = 1e-10;
    ErmResult iterative = local_erm_iterative(model, shard, Vector(4, 0.0), settings);
    CHECK(iterative.grad_norm <= 1e-10);
    CHECK(norm2(iterative.w - closed) <= 1e-8);

    // The shard quadratic reproduces the empirical gradient.
    Vector w = rng.normal_vector(4);
    Vector via_quad = quad_gradient(w, *q);
    Vector direct = local_empirical_gradient(model, w, shard);
    CHECK(norm2(via_quad - direct) <= 1e-10 * std::max(1.0, norm2(direct)));
}

TEST_CASE("smoothness profiles are ordered") {
    LinearRegressionLoss linreg(Vector(6, 1.0), 1.0);
    const auto& s1 = linreg.smoothness();
    CHECK(s1.strong_convexity <= s1.population_smoothness);
    CHECK(s1.population_smoothness <= s1.stacked_lipschitz);

    LogisticLoss logistic(Vector(6, 1.0), 0, 0x55, 10);
    const auto& s2 = logistic.smoothness();
    CHECK(s2.strong_convexity <= s2.population_smoothness);
    CHECK(s2.population_smoothness <= s2.stacked_lipschitz);
}
