#include <doctest.h>

#include <algorithm>
#include <vector>

#include "byzgd/aggregation.hpp"
#include "byzgd/rng.hpp"

using namespace byzgd;
using namespace byzgd::agg;

namespace {

// Independent naive implementation used as the oracle.
double oracle_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size();
    return (m % 2 == 1) ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

double oracle_trimmed(std::vector<double> v, double beta) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size();
    std::size_t k = static_cast<std::size_t>(beta * static_cast<double>(m));
    double sum = 0.0;
    for (std::size_t i = k; i < m - k; ++i) sum += v[i];
    return sum / static_cast<double>(m - 2 * k);
}

std::vector<Vector> random_batch(RngStream& rng, std::size_t m, std::size_t d,
                                 double span) {
    std::vector<Vector> vecs(m, Vector(d));
    for (auto& v : vecs)
        for (auto& x : v) x = (rng.uniform() - 0.5) * span;
    return vecs;
}

} // namespace

TEST_CASE("scalar_median order statistics") {
    CHECK(scalar_median(std::vector<double>{1, 3, 2}) == 2.0);
    CHECK(scalar_median(std::vector<double>{1, 2, 3, 100}) == 2.5);
    CHECK(scalar_median(std::vector<double>{5}) == 5.0);
}

TEST_CASE("scalar_median rejects bad input") {
    CHECK_THROWS_AS(scalar_median(std::vector<double>{}), InvalidArgument);
    CHECK_THROWS_AS(scalar_median(std::vector<double>{1.0, std::nan("")}),
                    InvalidArgument);
    double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(scalar_median(std::vector<double>{inf}), InvalidArgument);
}

TEST_CASE("scalar_trimmed_mean examples") {
    CHECK(scalar_trimmed_mean(std::vector<double>{0, 1, 2, 3, 100}, 0.2) == 2.0);
    std::vector<double> ten;
    for (int i = 1; i <= 10; ++i) ten.push_back(i);
    CHECK(scalar_trimmed_mean(ten, 0.25) == 5.5);
    CHECK(scalar_trimmed_mean(std::vector<double>{7, 7, 7}, 0.0) == 7.0);
}

TEST_CASE("scalar_trimmed_mean rejects bad beta") {
    std::vector<double> v{1, 2, 3};
    CHECK_THROWS_AS(scalar_trimmed_mean(v, -0.1), InvalidArgument);
    CHECK_THROWS_AS(scalar_trimmed_mean(v, 0.5), InvalidArgument);
    CHECK_THROWS_AS(scalar_trimmed_mean(std::vector<double>{}, 0.1), InvalidArgument);
}

TEST_CASE("coordinate rules match spec examples") {
    VectorBatch odd({{1, 5}, {3, 1}, {2, 9}});
    CHECK(coordinate_median(odd) == Vector{2, 5});

    VectorBatch five({{0, 0}, {10, -10}, {1, 1}, {2, -2}, {3, 3}});
    CHECK(coordinate_median(five) == Vector{2, 0});

    VectorBatch trim_batch({{0, 100}, {1, 1}, {2, 2}, {3, 3}, {100, 0}});
    CHECK(coordinate_trimmed_mean(trim_batch, 0.2) == Vector{2, 2});

    VectorBatch pair({{1, 1}, {3, 3}});
    CHECK(aggregate(AggregationRule::mean(), pair) == Vector{2, 2});
}

TEST_CASE("median dominated by duplicated honest vector") {
    RngStream rng(11, 0);
    Vector g = rng.normal_vector(6);
    VectorBatch batch({g, g, -10.0 * g});
    CHECK(aggregate(AggregationRule::median(), batch) == g);
}

TEST_CASE("batch validation") {
    CHECK_THROWS_AS(VectorBatch({{1, 2}, {1}}), InvalidArgument);
    CHECK_THROWS_AS(VectorBatch({{1, std::nan("")}}), InvalidArgument);
    CHECK_THROWS_AS(VectorBatch(std::vector<Vector>{}), InvalidArgument);
}

TEST_CASE("oracle equivalence on random batches") {
    for (std::size_t iter = 0; iter < 300; ++iter) {
        RngStream rng(21, iter);
        std::size_t m = 1 + rng.below(15);
        std::size_t d = 1 + rng.below(8);
        double beta = 0.5 * rng.uniform();
        auto vecs = random_batch(rng, m, d, 2e6);
        VectorBatch batch(vecs);
        Vector med = coordinate_median(batch);
        Vector trim = coordinate_trimmed_mean(batch, beta);
        for (std::size_t c = 0; c < d; ++c) {
            std::vector<double> col(m);
            for (std::size_t i = 0; i < m; ++i) col[i] = vecs[i][c];
            CHECK(med[c] == doctest::Approx(oracle_median(col)).epsilon(1e-15));
            CHECK(trim[c] == doctest::Approx(oracle_trimmed(col, beta)).epsilon(1e-15));
        }
    }
}

TEST_CASE("mean equals trimmed mean at beta zero, bitwise") {
    for (std::size_t iter = 0; iter < 50; ++iter) {
        RngStream rng(31, iter);
        auto vecs = random_batch(rng, 2 + rng.below(12), 1 + rng.below(6), 100.0);
        VectorBatch batch(vecs);
        CHECK(mean(batch) == coordinate_trimmed_mean(batch, 0.0));
        CHECK(aggregate(AggregationRule::mean(), batch) ==
              aggregate(AggregationRule::trimmed_mean(0.0), batch));
    }
}

TEST_CASE("permutation invariance") {
    for (std::size_t iter = 0; iter < 50; ++iter) {
        RngStream rng(41, iter);
        std::size_t m = 2 + rng.below(10);
        auto vecs = random_batch(rng, m, 3, 50.0);
        auto shuffled = vecs;
        for (std::size_t i = m - 1; i > 0; --i)
            std::swap(shuffled[i], shuffled[rng.below(i + 1)]);
        for (auto rule : {AggregationRule::mean(), AggregationRule::median(),
                          AggregationRule::trimmed_mean(0.25)}) {
            CHECK(aggregate(rule, VectorBatch(vecs)) ==
                  aggregate(rule, VectorBatch(shuffled)));
        }
    }
}

TEST_CASE("translation and scale equivariance") {
    for (std::size_t iter = 0; iter < 50; ++iter) {
        RngStream rng(51, iter);
        std::size_t m = 2 + rng.below(10);
        std::size_t d = 1 + rng.below(5);
        auto vecs = random_batch(rng, m, d, 10.0);
        Vector c = rng.normal_vector(d);
        double s = rng.uniform() * 3.0 + 0.1;
        auto shifted = vecs;
        auto scaled = vecs;
        for (std::size_t i = 0; i < m; ++i) {
            shifted[i] = vecs[i] + c;
            scaled[i] = s * vecs[i];
        }
        for (auto rule : {AggregationRule::mean(), AggregationRule::median(),
                          AggregationRule::trimmed_mean(0.2)}) {
            Vector base = aggregate(rule, VectorBatch(vecs));
            Vector from_shift = aggregate(rule, VectorBatch(shifted));
            Vector from_scale = aggregate(rule, VectorBatch(scaled));
            for (std::size_t k = 0; k < d; ++k) {
                CHECK(from_shift[k] == doctest::Approx(base[k] + c[k]).epsilon(1e-12));
                CHECK(from_scale[k] == doctest::Approx(s * base[k]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("per-coordinate boundedness") {
    for (std::size_t iter = 0; iter < 50; ++iter) {
        RngStream rng(61, iter);
        std::size_t m = 1 + rng.below(12);
        std::size_t d = 1 + rng.below(4);
        auto vecs = random_batch(rng, m, d, 1000.0);
        VectorBatch batch(vecs);
        for (auto rule : {AggregationRule::mean(), AggregationRule::median(),
                          AggregationRule::trimmed_mean(0.3)}) {
            Vector out = aggregate(rule, batch);
            for (std::size_t k = 0; k < d; ++k) {
                double lo = vecs[0][k], hi = vecs[0][k];
                for (std::size_t i = 1; i < m; ++i) {
                    lo = std::min(lo, vecs[i][k]);
                    hi = std::max(hi, vecs[i][k]);
                }
                CHECK(out[k] >= lo - 1e-9);
                CHECK(out[k] <= hi + 1e-9);
            }
        }
    }
}

TEST_CASE("median breakdown: minority corruption stays in honest range") {
    for (std::size_t iter = 0; iter < 100; ++iter) {
        RngStream rng(71, iter);
        std::size_t m = 3 + rng.below(12);
        std::size_t bad = rng.below((m - 1) / 2 + 1);
        std::vector<double> honest;
        std::vector<double> all;
        for (std::size_t i = 0; i < m - bad; ++i) {
            double x = rng.normal();
            honest.push_back(x);
            all.push_back(x);
        }
        for (std::size_t i = 0; i < bad; ++i)
            all.push_back((rng.uniform() - 0.5) * 2e9);
        double med = scalar_median(all);
        CHECK(med >= *std::min_element(honest.begin(), honest.end()));
        CHECK(med <= *std::max_element(honest.begin(), honest.end()));
    }
}

TEST_CASE("trimmed-mean deterministic deviation bound") {
    for (std::size_t iter = 0; iter < 2000; ++iter) {
        RngStream rng(81, iter);
        std::size_t m = 3 + rng.below(30);
        double beta = 0.5 * rng.uniform();
        std::size_t k = static_cast<std::size_t>(beta * static_cast<double>(m));
        std::size_t q = rng.below(k + 1);
        double mu = rng.normal() * 5.0;
        double s = rng.uniform() * 4.0 + 0.01;
        std::vector<double> values;
        double honest_sum = 0.0;
        for (std::size_t i = 0; i < m - q; ++i) {
            double x = mu + (2.0 * rng.uniform() - 1.0) * s;
            honest_sum += x;
            values.push_back(x);
        }
        double t = std::abs(honest_sum / static_cast<double>(m - q) - mu);
        for (std::size_t i = 0; i < q; ++i)
            values.push_back((rng.uniform() - 0.5) * 2e6);
        double tm = scalar_trimmed_mean(values, beta);
        double bound = (t + 3.0 * beta * s) / (1.0 - 2.0 * beta);
        CHECK(std::abs(tm - mu) <= bound * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("rule names") {
    CHECK(AggregationRule::mean().name() == "mean");
    CHECK(AggregationRule::median().name() == "median");
    CHECK(AggregationRule::trimmed_mean(0.25).name() ==
          "trimmed_mean(" + std::to_string(0.25) + ")");
}
