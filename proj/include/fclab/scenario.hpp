#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fclab/belief.hpp"
#include "fclab/utility.hpp"

namespace fclab {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Schema violations carry the offending field so the CLI can print
// line/field diagnostics and exit with the schema error code.
struct ScenarioError : std::runtime_error {
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct ScenarioFile {
    std::string kind;  // "coin" or "belief"

    // kind == "coin"
    CoinScenario coin;
    StrategyProfile strategies;  // one per forecaster, canonical frame

    // kind == "belief"
    BeliefModel belief;
    MixedStrategy report;  // player i's strategy; defaults to the belief marginal

    std::uint64_t seed = 0;
    std::uint64_t trials = 100000;
};

// Parse and validate a scenario JSON document. Throws ScenarioError on any
// schema or range violation.
ScenarioFile parse_scenario(const nlohmann::json& doc);
ScenarioFile load_scenario(const std::string& path);

nlohmann::json strategy_to_json(const MixedStrategy& s);
MixedStrategy strategy_from_json(const nlohmann::json& j, const std::string& field);

// Writes to the path, or to stdout when the path is empty.
void write_output(const std::string& path, const std::string& content);

// Deterministic decimal formatting for CSV cells (shortest round-trip).
std::string format_double(double v);

}  // namespace fclab
