#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "pace/cost_distribution.hpp"
#include "pace/synthetic.hpp"

using namespace pace;

namespace {

CostDistribution dist(std::initializer_list<std::pair<Cost, double>> entries) {
    std::map<Cost, double> m;
    for (auto [c, p] : entries) m[c] = p;
    return CostDistribution(m);
}

CostDistribution random_dist(std::mt19937_64& rng, int max_points = 5) {
    std::map<Cost, double> m;
    int k = static_cast<int>(rand_int(rng, 1, max_points));
    double total = 0.0;
    std::map<Cost, double> weights;
    for (int i = 0; i < k; ++i) {
        weights[rand_int(rng, 1, 40)] += 1.0 + rand_unit(rng) * 9.0;
        total += 1.0;
    }
    (void)total;
    return CostDistribution::from_weights(weights);
}

}  // namespace

TEST_CASE("construction enforces invariants") {
    CHECK_THROWS(CostDistribution(std::map<Cost, double>{{10, 0.5}}));          // mass != 1
    CHECK_THROWS(CostDistribution(std::map<Cost, double>{{-1, 1.0}}));          // negative cost
    CHECK_THROWS(CostDistribution(std::map<Cost, double>{}));                   // empty
    std::map<Cost, double> big;
    for (Cost c = 0; c < 10'001; ++c) big[c] = 1.0;
    CHECK_THROWS(CostDistribution::from_weights(big));                          // support cap

    // zero-mass entries are dropped
    auto d = CostDistribution(std::map<Cost, double>{{5, 1.0}, {9, 0.0}});
    CHECK(d.size() == 1);
    CHECK(d.at(9) == 0.0);
}

TEST_CASE("convolve matches enumeration of cost pairs") {
    auto d = dist({{10, 0.8}, {15, 0.2}});
    auto c = convolve(d, d);
    CHECK(c.size() == 3);
    CHECK(c.at(20) == doctest::Approx(0.64).epsilon(1e-12));
    CHECK(c.at(25) == doctest::Approx(0.32).epsilon(1e-12));
    CHECK(c.at(30) == doctest::Approx(0.04).epsilon(1e-12));
}

TEST_CASE("convolve identity and constant shift") {
    auto d = dist({{8, 0.9}, {10, 0.1}});
    auto idd = convolve(CostDistribution::point(0), d);
    CHECK(idd == d);

    auto shifted = convolve(d, CostDistribution::point(5));
    CHECK(shifted.at(13) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(shifted.at(15) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("convolve is commutative and associative") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        auto a = random_dist(rng);
        auto b = random_dist(rng);
        auto c = random_dist(rng);
        CHECK(total_variation(convolve(a, b), convolve(b, a)) < 1e-12);
        CHECK(total_variation(convolve(convolve(a, b), c), convolve(a, convolve(b, c))) < 1e-9);
    }
}

TEST_CASE("dominance on the two-path example distributions") {
    auto pa = dist({{40, 0.5}, {50, 0.2}, {60, 0.2}, {70, 0.1}});
    auto pb = dist({{50, 0.8}, {60, 0.2}});
    CHECK_FALSE(dominates(pa, pb));
    CHECK_FALSE(dominates(pb, pa));
}

TEST_CASE("dominance simple cases") {
    auto a = dist({{20, 1.0}});
    auto b = dist({{20, 0.8}, {30, 0.2}});
    CHECK(dominates(a, b));
    CHECK_FALSE(dominates(b, a));
    CHECK_FALSE(dominates(a, a));  // no strict improvement
}

TEST_CASE("dominance is a strict partial order") {
    std::mt19937_64 rng(11);
    std::vector<CostDistribution> pool;
    for (int i = 0; i < 40; ++i) pool.push_back(random_dist(rng));
    for (const auto& a : pool) {
        CHECK_FALSE(dominates(a, a));
        for (const auto& b : pool) {
            if (dominates(a, b)) CHECK_FALSE(dominates(b, a));  // antisymmetric
            for (const auto& c : pool)
                if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
        }
    }
}

TEST_CASE("prob_within on the two-path example") {
    auto pa = dist({{40, 0.5}, {50, 0.2}, {60, 0.2}, {70, 0.1}});
    auto pb = dist({{50, 0.8}, {60, 0.2}});
    CHECK(prob_within(pa, Budget(60)) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(prob_within(pb, Budget(60)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prob_within(pa, Budget(0)) == 0.0);
}

TEST_CASE("prob_within is monotone and saturates at the max cost") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        auto d = random_dist(rng);
        double prev = 0.0;
        for (Cost b = 0; b <= d.max_cost(); ++b) {
            double p = prob_within(d, Budget(b));
            CHECK(p >= prev - 1e-15);
            prev = p;
        }
        CHECK(prob_within(d, Budget(d.max_cost())) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("kl divergence examples") {
    auto d = dist({{20, 0.8}, {30, 0.2}});
    CHECK(kl_divergence(d, d) == doctest::Approx(0.0).epsilon(1e-6));

    auto point = dist({{20, 1.0}});
    auto half = dist({{20, 0.5}, {30, 0.5}});
    CHECK(kl_divergence(point, half) == doctest::Approx(std::log(2.0)).epsilon(1e-4));

    auto p = dist({{20, 0.8}, {30, 0.2}});
    auto q = dist({{20, 0.2}, {30, 0.8}});
    double expected = 0.8 * std::log(4.0) + 0.2 * std::log(0.25);
    CHECK(kl_divergence(p, q) == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("kl divergence is non-negative (Gibbs)") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        auto t = random_dist(rng);
        auto e = random_dist(rng);
        CHECK(kl_divergence(t, e) > -1e-12);
        CHECK(kl_divergence(t, t) < 1e-6);
    }
}

TEST_CASE("kl divergence without smoothing needs matching support") {
    auto t = dist({{10, 0.5}, {20, 0.5}});
    auto e = dist({{10, 1.0}});
    CHECK_THROWS_WITH_AS(kl_divergence(t, e, 0.0), "support mismatch", std::runtime_error);
}

TEST_CASE("budget rejects negatives") {
    CHECK_THROWS(Budget(-1));
    CHECK(Budget(0).value == 0);
}
