#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fclab/hedging.hpp"
#include "fclab/rng.hpp"

using namespace fclab;

TEST_CASE("feasibility condition margins") {
    SUBCASE("the p bound is negative at the stated minimum m") {
        const auto r = condition1_check(21, 0.01, 0.01);
        CHECK(r.m_margin == doctest::Approx(0.0));
        CHECK(r.p_bound < 0.0);
        CHECK_FALSE(r.ok);
    }
    SUBCASE("smallest event count with a positive p bound") {
        CHECK(condition1_smallest_feasible_m() == 892);
        CHECK(condition1_check(891, 0.001, 0.0001).p_bound < 0.0);
        CHECK(condition1_check(892, 0.001, 0.0001).p_bound > 0.0);
    }
    SUBCASE("a known feasible triple") {
        const auto r = condition1_check(1600, 0.06, 0.0005);
        CHECK(r.ok);
        CHECK(r.p_margin > 0.0);
        CHECK(r.eps_margin > 0.0);
    }
}

TEST_CASE("feasible triples satisfy every margin and exclude the hedged report") {
    const auto triples = condition1_feasible_triples(20);
    REQUIRE(triples.size() == 20);
    for (const auto& t : triples) {
        const auto r = condition1_check(t.m, t.p, t.eps);
        CHECK(r.ok);
        // the hedged report itself is never eps-truthful: p* > p + eps
        CHECK(t.p_star() > t.p + t.eps);
    }
}

TEST_CASE("weight-class distances match direct computation") {
    Rng rng(17);
    const std::size_t m = 40;
    for (double q : {0.26, 0.1, 0.5}) {
        for (int rep = 0; rep < 100; ++rep) {
            const auto w = static_cast<std::size_t>(rng.next_below(m + 1));
            // random outcome of weight w
            Outcome y(m, 0);
            std::size_t placed = 0;
            while (placed < w) {
                const auto idx = static_cast<std::size_t>(rng.next_below(m));
                if (!y[idx]) {
                    y[idx] = 1;
                    ++placed;
                }
            }
            double direct = 0.0;
            for (std::size_t t = 0; t < m; ++t) {
                const double d = q - static_cast<double>(y[t]);
                direct += d * d;
            }
            CHECK(weight_class_distance_sq(m, q, w) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("lemma margins are positive across the feasible region") {
    for (const auto& t : condition1_feasible_triples(20)) {
        CHECK(lemma1_margin(t.m, t.p, t.eps) > 0.0);
        CHECK(lemma2_margin(t.m, t.p, t.eps) > 0.0);
    }
    CHECK_THROWS_AS(lemma1_margin(21, 0.01, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(lemma2_margin(21, 0.01, 0.01), std::invalid_argument);
}

TEST_CASE("ball sampling stays inside the stated radius and cube") {
    const std::size_t m = 12;
    const Report center(m, 0.3);
    const double radius = 0.05;
    Report mean(m, 0.0);
    const int samples = 10000;
    for (int k = 0; k < samples; ++k) {
        const auto r = sample_ball_report(center, radius, 1000 + k);
        double d = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
            CHECK(r[t] >= 0.0);
            CHECK(r[t] <= 1.0);
            d += (r[t] - center[t]) * (r[t] - center[t]);
            mean[t] += r[t];
        }
        CHECK(std::sqrt(d / static_cast<double>(m)) <= radius + 1e-12);
    }
    // symmetric sampler: empirical mean close to the center
    const double se = radius / std::sqrt(static_cast<double>(samples));
    for (std::size_t t = 0; t < m; ++t)
        CHECK(std::abs(mean[t] / samples - center[t]) < 3.0 * se);
}

TEST_CASE("dominance of the hedged report at a feasible triple") {
    HedgingParams params;
    params.m = 1600;
    params.p = 0.06;
    params.eps = 0.0005;
    const auto rep = dominance_check(params, 2, 8000, 17);
    CHECK(rep.violations == 0);
    CHECK(rep.strict_count > 0);
    CHECK(rep.gain > 0.0);
    CHECK(rep.gain - rep.ci_half_width > 0.0);
    CHECK_FALSE(rep.witness.has_value());

    // reproducibility: identical bits for identical seeds
    const auto rep2 = dominance_check(params, 2, 8000, 17);
    CHECK(rep.gain == rep2.gain);
    CHECK(rep.ci_half_width == rep2.ci_half_width);
    CHECK(rep.strict_count == rep2.strict_count);
}

TEST_CASE("infeasible parameters are rejected unless explicitly overridden") {
    HedgingParams params;
    params.m = 32;
    params.p = 0.1;
    params.eps = 0.04;
    CHECK_THROWS_AS(dominance_check(params, 2, 100, 1), std::invalid_argument);
    DominanceOptions opts;
    opts.skip_condition1 = true;
    const auto rep = dominance_check(params, 2, 5000, 1, opts);
    CHECK_FALSE(rep.condition1.ok);
    CHECK(rep.dominance_frequency >= 0.0);
    CHECK(rep.dominance_frequency <= 1.0 + 1e-9);
}
