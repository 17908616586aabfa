#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "fclab/scenario.hpp"

using namespace fclab;
using nlohmann::json;

TEST_CASE("coin scenario parsing") {
    const json doc = {
        {"kind", "coin"},
        {"m", 1},
        {"n", 2},
        {"p", 0.3},
        {"informed_index", 0},
        {"strategies",
         json::array({json::array({0.0}),
                      {{"support", json::array({{{"report", json::array({0.0})}, {"weight", 0.5}},
                                                {{"report", json::array({1.0})}, {"weight", 0.5}}})}}})},
        {"seed", 42},
        {"trials", 1000},
    };
    const auto sc = parse_scenario(doc);
    CHECK(sc.kind == "coin");
    CHECK(sc.coin.m == 1);
    CHECK(sc.coin.p == doctest::Approx(0.3));
    CHECK(sc.seed == 42);
    CHECK(sc.trials == 1000);
    REQUIRE(sc.strategies.size() == 2);
    CHECK(sc.strategies[0].support.size() == 1);
    CHECK(sc.strategies[1].support.size() == 2);
}

TEST_CASE("belief scenario parsing with default truthful report") {
    const json doc = {
        {"kind", "belief"},
        {"belief",
         json::array({json::array({{{"r", 0.5}, {"y", 1}, {"w", 0.4}},
                                   {{"r", 0.5}, {"y", 0}, {"w", 0.6}}})})},
    };
    const auto sc = parse_scenario(doc);
    CHECK(sc.kind == "belief");
    REQUIRE(sc.belief.m() == 1);
    CHECK(sc.belief.marginal()[0] == doctest::Approx(0.4).epsilon(1e-12));
    REQUIRE(sc.report.support.size() == 1);
    CHECK(sc.report.support[0].first[0] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("schema violations carry field names") {
    CHECK_THROWS_WITH_AS(parse_scenario({{"kind", "weird"}}),
                         doctest::Contains("kind"), ScenarioError);
    CHECK_THROWS_WITH_AS(parse_scenario({{"kind", "coin"}, {"m", 1}, {"n", 2}, {"p", 1.5},
                                         {"strategies", json::array()}}),
                         doctest::Contains("p"), ScenarioError);
    const json bad_weights = {
        {"kind", "coin"},
        {"m", 1},
        {"n", 2},
        {"p", 0.2},
        {"strategies",
         json::array({json::array({0.0}),
                      {{"support", json::array({{{"report", json::array({0.0})}, {"weight", 0.4}},
                                                {{"report", json::array({1.0})}, {"weight", 0.5}}})}}})},
    };
    CHECK_THROWS_AS(parse_scenario(bad_weights), ScenarioError);
    const json bad_y = {
        {"kind", "belief"},
        {"belief", json::array({json::array({{{"r", 0.5}, {"y", 2}, {"w", 1.0}}})})},
    };
    CHECK_THROWS_WITH_AS(parse_scenario(bad_y), doctest::Contains(".y"), ScenarioError);
}

TEST_CASE("strategy json round trip") {
    MixedStrategy s;
    s.support = {{{0.25, 0.5}, 0.3}, {{0.75, 0.5}, 0.7}};
    const auto j = strategy_to_json(s);
    const auto back = strategy_from_json(j, "s");
    REQUIRE(back.support.size() == 2);
    CHECK(back.support[0].first == s.support[0].first);
    CHECK(back.support[1].second == doctest::Approx(0.7));
}

TEST_CASE("double formatting round trips") {
    for (double v : {0.1, 1.0 / 3.0, 123456.789, 7.825643555056122e-169, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
