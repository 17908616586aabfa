#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fclab/equilibrium.hpp"
#include "fclab/serial.hpp"
#include "fclab/utility.hpp"

using namespace fclab;

namespace {

StrategyProfile m1_profile(double p) { return m1_n2_equilibrium(p); }

}  // namespace

TEST_CASE("exact utilities at the one-event equilibrium") {
    const auto profile = m1_profile(0.3);
    CHECK(exact_expected_utility(0, profile, 1, 0.3) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(exact_expected_utility(1, profile, 1, 0.3) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("identical strategies split the prize") {
    StrategyProfile profile = {MixedStrategy::pure({0.3, 0.8}), MixedStrategy::pure({0.3, 0.8})};
    CHECK(exact_expected_utility(0, profile, 2, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("enumeration cap is enforced") {
    StrategyProfile profile = {MixedStrategy::pure(Report(21, 0.5)),
                               MixedStrategy::pure(Report(21, 0.5))};
    CHECK_THROWS_AS(exact_expected_utility(0, profile, 21, 0.3), std::invalid_argument);
}

TEST_CASE("symmetrize produces a reflection mixture with unit mass") {
    const auto sym = symmetrize(MixedStrategy::pure({0.2, 0.7}), 2);
    CHECK(sym.support.size() == 4);
    double total = 0.0;
    for (const auto& [r, w] : sym.support) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    const auto avg = average_report(sym);
    CHECK(avg[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(avg[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("direct bayes game equals the canonically inverted game") {
    // informed plays a theta-dependent strategy (given in the canonical
    // frame); uninformed strategies must be symmetrized in the canonical game
    for (std::size_t m : {1, 2, 3}) {
        for (double p : {0.1, 0.35}) {
            MixedStrategy informed;
            informed.support = {{Report(m, 0.1), 0.7}, {Report(m, 0.4), 0.3}};
            MixedStrategy uninformed;
            uninformed.support = {{Report(m, 0.5), 0.5}, {Report(m, 0.9), 0.5}};
            StrategyProfile canonical = {informed, uninformed};

            StrategyProfile sym = canonical;
            sym[1] = symmetrize(uninformed, m);
            for (std::size_t i = 0; i < 2; ++i) {
                const double direct = exact_expected_utility_direct(i, canonical, 0, m, p);
                const double canon = exact_expected_utility(i, sym, m, p);
                CHECK(direct == doctest::Approx(canon).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("tie-aware utility matches coin-game enumeration on one event") {
    BeliefModel belief;
    belief.events.push_back(EventJoint::independent({{0.0, 0.5}, {1.0, 0.5}}, 0.3));
    CHECK(tie_aware_utility({0.0}, belief) == doctest::Approx(0.6).epsilon(1e-12));
    BeliefModel same;
    same.events.push_back(EventJoint::independent({{0.4, 1.0}}, 0.7));
    CHECK(tie_aware_utility({0.4}, same) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("one-sided support gives zero utility") {
    // opponent at the truth, our report at the opposite vertex, outcome fixed
    BeliefModel belief;
    belief.events.push_back(EventJoint::independent({{1.0, 1.0}}, 1.0));
    CHECK(tie_aware_utility({0.0}, belief) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("monte carlo covers the exact value") {
    const auto profile = m1_profile(0.3);
    const double exact = 0.6;
    int covered = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto est = monte_carlo_utility(0, profile, 1, 0.3, 20000, seed);
        if (std::abs(est.mean - exact) <= 4.0 * est.half_width) ++covered;
    }
    CHECK(covered >= 99);
}

TEST_CASE("monte carlo is reproducible and worker-invariant") {
    const auto profile = m1_profile(0.25);
    const auto a = monte_carlo_utility(1, profile, 1, 0.25, 50000, 99, 1);
    const auto b = monte_carlo_utility(1, profile, 1, 0.25, 50000, 99, 2);
    CHECK(a.mean == b.mean);
    CHECK(a.half_width == b.half_width);
}

TEST_CASE("serial reference matches the parallel kernels bit for bit") {
    MixedStrategy informed;
    informed.support = {{Report(5, 0.2), 0.6}, {Report(5, 0.7), 0.4}};
    MixedStrategy uninformed;
    uninformed.support = {{Report(5, 0.0), 0.5}, {Report(5, 1.0), 0.5}};
    StrategyProfile profile = {informed, uninformed};

    for (std::size_t i = 0; i < 2; ++i)
        CHECK(serial_exact_expected_utility(i, profile, 5, 0.3) ==
              exact_expected_utility(i, profile, 5, 0.3));

    const auto s = serial_monte_carlo_utility(0, profile, 5, 0.3, 30000, 4242);
    const auto par = monte_carlo_utility(0, profile, 5, 0.3, 30000, 4242);
    CHECK(s.mean == par.mean);
    CHECK(s.half_width == par.half_width);
}

TEST_CASE("degenerate worlds give exact share values") {
    StrategyProfile profile = {MixedStrategy::pure({1.0}), MixedStrategy::pure({0.0})};
    // p = 1 is outside the coin model; use a belief world with a fixed outcome
    BeliefModel belief;
    belief.events.push_back(EventJoint::independent({{0.0, 1.0}}, 1.0));
    const auto est = monte_carlo_utility(MixedStrategy::pure({1.0}), belief, 1000, 5);
    CHECK(est.mean == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(est.half_width == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("mixed-strategy validation") {
    MixedStrategy bad;
    bad.support = {{{0.5}, 0.6}, {{0.2}, 0.6}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    MixedStrategy out_of_range;
    out_of_range.support = {{{1.5}, 1.0}};
    CHECK_THROWS_AS(out_of_range.validate(), std::invalid_argument);
}
