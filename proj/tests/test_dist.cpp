#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fclab/dist.hpp"
#include "fclab/rng.hpp"

using namespace fclab;

namespace {

// full product-space enumeration of a sum of independent finite atom lists
std::vector<ScoreDiffDistribution::Atom> enumerate_sum(
    const std::vector<ScoreDiffDistribution>& dists) {
    std::vector<ScoreDiffDistribution::Atom> acc = {{0.0, 1.0}};
    for (const auto& d : dists) {
        std::vector<ScoreDiffDistribution::Atom> next;
        for (const auto& a : acc)
            for (const auto& b : d.atoms()) next.push_back({a.value + b.value, a.weight * b.weight});
        acc = std::move(next);
    }
    return acc;
}

ScoreDiffDistribution random_dist(Rng& rng, std::size_t max_atoms = 4) {
    std::vector<ScoreDiffDistribution::Atom> atoms;
    const std::size_t k = 2 + rng.next_below(max_atoms - 1);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        atoms.push_back({2.0 * rng.next_double() - 1.0, rng.next_double() + 0.05});
        total += atoms.back().weight;
    }
    for (auto& a : atoms) a.weight /= total;
    return ScoreDiffDistribution(std::move(atoms));
}

}  // namespace

TEST_CASE("score_diff_event basic shapes") {
    SUBCASE("matching deterministic reports give a point mass at zero") {
        const auto ev = EventJoint::independent({{0.7, 1.0}}, 0.4);
        const auto d = score_diff_event(0.7, ev);
        REQUIRE(d.atoms().size() == 1);
        CHECK(d.atoms()[0].value == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(d.variance() == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("opposite vertices against a fair coin") {
        const auto ev = EventJoint::independent({{1.0, 1.0}}, 0.5);
        const auto d = score_diff_event(0.0, ev);
        REQUIRE(d.atoms().size() == 2);
        CHECK(d.atoms()[0].value == doctest::Approx(-1.0));
        CHECK(d.atoms()[1].value == doctest::Approx(1.0));
        CHECK(d.mean() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(d.variance() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("half reports tie regardless of the outcome") {
        const auto ev = EventJoint::independent({{0.5, 1.0}}, 0.2);
        const auto d = score_diff_event(0.5, ev);
        REQUIRE(d.atoms().size() == 1);
        CHECK(d.atoms()[0].value == doctest::Approx(0.0));
    }
}

TEST_CASE("score difference identity") {
    // Delta(p) - Delta(r) = p^2 - r^2 + 2y(r - p) for the quadratic score
    for (int pi = 0; pi <= 10; ++pi)
        for (int ri = 0; ri <= 10; ++ri)
            for (int y = 0; y <= 1; ++y) {
                const double p = pi / 10.0, r = ri / 10.0;
                const double lhs = -quadratic_score(p, y) + quadratic_score(r, y);
                const double rhs = p * p - r * r + 2.0 * y * (r - p);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
            }
}

TEST_CASE("expected quadratic score is uniquely maximized at the belief") {
    for (int bi = 0; bi <= 10; ++bi) {
        const double belief = bi / 10.0;
        double best = -1.0;
        int best_k = -1;
        for (int k = 0; k <= 100; ++k) {
            const double r = k / 100.0;
            const double u = belief * quadratic_score(r, 1) + (1.0 - belief) * quadratic_score(r, 0);
            if (u > best + 1e-15) {
                best = u;
                best_k = k;
            }
        }
        CHECK(best_k == bi * 10);
    }
}

TEST_CASE("convolution equals product-space enumeration on small m") {
    Rng rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t m = 2 + rng.next_below(4);
        std::vector<ScoreDiffDistribution> dists;
        for (std::size_t t = 0; t < m; ++t) dists.push_back(random_dist(rng));
        const auto conv = convolve(dists);
        const ScoreDiffDistribution brute(enumerate_sum(dists));
        for (const auto& a : brute.atoms())
            CHECK(conv.cdf(a.value + 1e-12) == doctest::Approx(brute.cdf(a.value)).epsilon(1e-10));
    }
}

TEST_CASE("convolve examples") {
    SUBCASE("point masses compose") {
        std::vector<ScoreDiffDistribution> ds(5, ScoreDiffDistribution::point_mass(0.0));
        const auto c = convolve(ds);
        REQUIRE(c.atoms().size() == 1);
        CHECK(c.atoms()[0].value == doctest::Approx(0.0));
    }
    SUBCASE("two symmetric binaries") {
        ScoreDiffDistribution d({{-1.0, 0.5}, {1.0, 0.5}});
        const auto c = convolve({d, d});
        REQUIRE(c.atoms().size() == 3);
        CHECK(c.atoms()[0].value == doctest::Approx(-2.0));
        CHECK(c.atoms()[0].weight == doctest::Approx(0.25));
        CHECK(c.atoms()[1].weight == doctest::Approx(0.5));
        CHECK(c.atoms()[2].weight == doctest::Approx(0.25));
    }
}

TEST_CASE("cumulants add across independent terms") {
    Rng rng(77);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t m = 2 + rng.next_below(9);
        std::vector<ScoreDiffDistribution> dists;
        double k3 = 0.0, k4 = 0.0, mu = 0.0, var = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
            dists.push_back(random_dist(rng));
            mu += dists.back().mean();
            var += dists.back().variance();
            k3 += dists.back().k3();
            k4 += dists.back().k4();
        }
        const auto conv = convolve(dists);
        CHECK(conv.mean() == doctest::Approx(mu).epsilon(1e-10));
        CHECK(conv.variance() == doctest::Approx(var).epsilon(1e-10));
        CHECK(conv.k3() == doctest::Approx(k3).scale(1.0).epsilon(1e-10));
        CHECK(conv.k4() == doctest::Approx(k4).scale(1.0).epsilon(1e-10));
        const auto mom = sum_moments(dists);
        CHECK(mom.k3 == doctest::Approx(k3).epsilon(1e-12));
        CHECK(mom.k4 == doctest::Approx(k4).epsilon(1e-12));
    }
}

TEST_CASE("cdf is a right-continuous step function") {
    ScoreDiffDistribution d({{-2.0, 0.25}, {0.0, 0.5}, {2.0, 0.25}});
    CHECK(d.cdf(-3.0) == doctest::Approx(0.0));
    CHECK(d.cdf(-2.0) == doctest::Approx(0.25));
    CHECK(d.cdf(-1.0) == doctest::Approx(0.25));
    CHECK(d.cdf(0.0) == doctest::Approx(0.75));
    CHECK(d.cdf(3.0) == doctest::Approx(1.0));
    CHECK(d.mass_at_zero() == doctest::Approx(0.5));
}

TEST_CASE("binned convolution preserves total mass and moments approximately") {
    Rng rng(13);
    std::vector<ScoreDiffDistribution> dists;
    for (int t = 0; t < 12; ++t) dists.push_back(random_dist(rng, 8));
    ConvolveOptions opts;
    opts.atom_cap = 1000;  // force the binned path
    const auto c = convolve(dists, opts);
    double total = 0.0;
    for (const auto& a : c.atoms()) total += a.weight;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    const auto mom = sum_moments(dists);
    CHECK(c.mean() == doctest::Approx(mom.mu).epsilon(1e-3));
    CHECK(c.variance() == doctest::Approx(mom.var).epsilon(1e-2));
}

TEST_CASE("leave-one-out moments match brute force on m=4") {
    BeliefModel belief;
    belief.events.push_back(EventJoint::independent({{0.2, 0.5}, {0.9, 0.5}}, 0.3));
    belief.events.push_back(EventJoint::independent({{0.4, 1.0}}, 0.6));
    belief.events.push_back(EventJoint::independent({{0.1, 0.25}, {0.5, 0.75}}, 0.5));
    belief.events.push_back(EventJoint::independent({{0.8, 0.5}, {0.6, 0.5}}, 0.2));
    const Report r = {0.3, 0.4, 0.5, 0.7};
    const auto events = score_diff_events(r, belief);
    for (std::size_t t = 0; t < 4; ++t) {
        std::vector<ScoreDiffDistribution> others;
        for (std::size_t s = 0; s < 4; ++s)
            if (s != t) others.push_back(events[s]);
        const ScoreDiffDistribution brute(enumerate_sum(others));
        const auto stats = leave_one_out_stats(r, belief, t);
        CHECK(stats.mu == doctest::Approx(brute.mean()).epsilon(1e-10));
        CHECK(stats.var == doctest::Approx(brute.variance()).epsilon(1e-10));
        CHECK(stats.k3 == doctest::Approx(brute.k3()).scale(1.0).epsilon(1e-10));
        CHECK(stats.k4 == doctest::Approx(brute.k4()).scale(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(
        leave_one_out_stats({0.5}, BeliefModel{{EventJoint::independent({{0.5, 1.0}}, 0.5)}}, 0),
        std::invalid_argument);
}

TEST_CASE("tie mass matches the exact cancellation count on a lattice family") {
    // r = 0.5 vs opponent 0.3, fair outcome: the per-event difference is
    // -0.16 (y = 0) or +0.24 (y = 1), so the sum cancels exactly when the
    // counts satisfy 3a = 2b, i.e. only when m is a multiple of 5
    const auto ev = EventJoint::independent({{0.3, 1.0}}, 0.5);
    auto tie_mass = [&](std::size_t m) {
        std::vector<ScoreDiffDistribution> dists(m, score_diff_event(0.5, ev));
        return convolve(dists).mass_at_zero();
    };
    CHECK(tie_mass(4) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(tie_mass(7) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(tie_mass(5) == doctest::Approx(10.0 / 32.0).epsilon(1e-12));
    CHECK(tie_mass(10) == doctest::Approx(210.0 / 1024.0).epsilon(1e-12));
}
