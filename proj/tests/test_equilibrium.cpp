#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fclab/equilibrium.hpp"

using namespace fclab;

TEST_CASE("one-event equilibrium utilities match the closed form") {
    for (double p : {0.1, 0.25, 0.4, 0.45}) {
        const auto profile = m1_n2_equilibrium(p);
        CHECK(exact_expected_utility(0, profile, 1, p) ==
              doctest::Approx(0.75 - p / 2.0).epsilon(1e-13));
        CHECK(exact_expected_utility(1, profile, 1, p) ==
              doctest::Approx(0.25 + p / 2.0).epsilon(1e-13));
    }
}

TEST_CASE("n-forecaster informed utility by enumeration") {
    // enumeration oracle: (1-p)(2^n - 1)/(n 2^{n-1}) + p/(n 2^{n-1})
    for (std::size_t n : {2, 3, 4, 5}) {
        for (double p : {0.1, 0.3}) {
            const double pow2 = std::pow(2.0, static_cast<double>(n - 1));
            const double expected =
                ((1.0 - p) * (2.0 * pow2 - 1.0) + p) / (static_cast<double>(n) * pow2);
            CHECK(m1_n_informed_utility(p, n) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    // the displayed closed form disagrees with enumeration already at n = 2
    const double displayed = m1_n_informed_utility_closed_form(0.3, 2);
    CHECK(displayed == doctest::Approx(0.75 + 0.3 / 6.0).epsilon(1e-12));
    CHECK(std::abs(displayed - m1_n_informed_utility(0.3, 2)) > 0.1);
}

TEST_CASE("two-event equilibrium profile shape") {
    const auto profile = m2_equilibrium(0.4);
    REQUIRE(profile.size() == 2);
    CHECK(profile[0].support.size() == 3);
    CHECK(profile[1].support.size() == 5);
    for (const auto& s : profile) {
        double total = 0.0;
        for (const auto& [r, w] : s.support) total += w;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto avg = average_report(profile[0]);
    CHECK(avg[0] == doctest::Approx((3.0 - 0.8) / (4.0 * 1.6)).epsilon(1e-12));
    CHECK(avg[1] == doctest::Approx(avg[0]).epsilon(1e-12));
    CHECK_THROWS_AS(m2_equilibrium(0.2), std::invalid_argument);
}

TEST_CASE("average report of simple strategies") {
    CHECK(average_report(MixedStrategy::pure({0.3, 0.9}))[1] == doctest::Approx(0.9));
    MixedStrategy uniform;
    uniform.support = {{{0.0}, 0.5}, {{1.0}, 0.5}};
    CHECK(average_report(uniform)[0] == doctest::Approx(0.5));
}

TEST_CASE("hedging threshold solves the fixed point") {
    const double t = hedging_threshold();
    CHECK(t == doctest::Approx((5.0 - std::sqrt(13.0)) / 4.0).epsilon(1e-15));
    CHECK((3.0 - 2.0 * t) / (4.0 * (2.0 - t)) == doctest::Approx(t).epsilon(1e-12));
    CHECK(t == doctest::Approx(0.34861).epsilon(1e-4));
}

TEST_CASE("no profitable deviation at the one-event equilibrium") {
    const auto profile = m1_n2_equilibrium(0.35);
    BestResponseOptions opts;
    opts.grid_resolution = 0.01;
    const auto rep = verify_equilibrium(profile, 1, 0.35, 0, opts);
    CHECK(rep.best_responses[0].gain <= 1e-12);
    CHECK(rep.best_responses[1].gain <= 1e-12);
    CHECK(rep.utilities[0] == doctest::Approx(0.75 - 0.175).epsilon(1e-12));
    CHECK(rep.utilities[1] == doctest::Approx(0.25 + 0.175).epsilon(1e-12));
}

TEST_CASE("unsymmetrized uninformed deviations would look spuriously profitable") {
    // the uninformed player cannot condition on the coin biases; evaluating a
    // fixed deviation in the canonical frame without reflection mixing
    // overstates its value
    const auto profile = m1_n2_equilibrium(0.3);
    BestResponseOptions raw;
    raw.grid_resolution = 0.5;
    raw.symmetrize_deviations = false;
    const auto gain = best_response_gain(profile, 1, 1, 0.3, raw);
    CHECK(gain.gain > 0.05);  // artifact of the wrong frame, not a real deviation
}
