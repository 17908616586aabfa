#include "fclab/scenario.hpp"

#include <charconv>
#include <fstream>
#include <iostream>

namespace fclab {

namespace {

using nlohmann::json;

double get_prob(const json& j, const std::string& field) {
    if (!j.is_number()) throw ScenarioError(field + ": expected a number");
    const double v = j.get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw ScenarioError(field + ": must lie in [0, 1]");
    return v;
}

Report report_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) throw ScenarioError(field + ": expected a non-empty array");
    Report r;
    for (std::size_t t = 0; t < j.size(); ++t)
        r.push_back(get_prob(j[t], field + "[" + std::to_string(t) + "]"));
    return r;
}

}  // namespace

MixedStrategy strategy_from_json(const json& j, const std::string& field) {
    MixedStrategy s;
    if (j.is_array()) {
        // bare array shorthand for a pure strategy
        return MixedStrategy::pure(report_from_json(j, field));
    }
    if (!j.is_object() || !j.contains("support"))
        throw ScenarioError(field + ": expected a report array or {support: [...]}");
    const auto& sup = j["support"];
    if (!sup.is_array() || sup.empty())
        throw ScenarioError(field + ".support: expected a non-empty array");
    for (std::size_t k = 0; k < sup.size(); ++k) {
        const std::string at = field + ".support[" + std::to_string(k) + "]";
        const auto& atom = sup[k];
        if (!atom.is_object() || !atom.contains("report") || !atom.contains("weight"))
            throw ScenarioError(at + ": expected {report, weight}");
        const double w = atom["weight"].get<double>();
        if (!(w > 0.0)) throw ScenarioError(at + ".weight: must be positive");
        s.support.push_back({report_from_json(atom["report"], at + ".report"), w});
    }
    try {
        s.validate();
    } catch (const std::exception& e) {
        throw ScenarioError(field + ": " + e.what());
    }
    return s;
}

nlohmann::json strategy_to_json(const MixedStrategy& s) {
    json sup = json::array();
    for (const auto& [r, w] : s.support) sup.push_back({{"report", r}, {"weight", w}});
    return {{"support", sup}};
}

ScenarioFile parse_scenario(const json& doc) {
    if (!doc.is_object()) throw ScenarioError("scenario: expected a JSON object");
    ScenarioFile f;
    f.kind = doc.value("kind", std::string{});
    if (f.kind != "coin" && f.kind != "belief")
        throw ScenarioError("kind: expected \"coin\" or \"belief\"");

    if (doc.contains("seed")) {
        const auto& s = doc["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
            throw ScenarioError("seed: expected a non-negative integer");
        f.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("trials")) {
        const auto& tr = doc["trials"];
        const bool ok_type =
            tr.is_number_unsigned() || (tr.is_number_integer() && tr.get<std::int64_t>() >= 1);
        if (!ok_type || tr.get<std::uint64_t>() < 1)
            throw ScenarioError("trials: expected a positive count");
        f.trials = tr.get<std::uint64_t>();
    }

    if (f.kind == "coin") {
        if (!doc.contains("m") || !doc.contains("n") || !doc.contains("p"))
            throw ScenarioError("coin scenario: fields m, n, p are required");
        f.coin.m = doc["m"].get<std::size_t>();
        f.coin.n = doc["n"].get<std::size_t>();
        f.coin.p = get_prob(doc["p"], "p");
        f.coin.informed_index = doc.value("informed_index", std::size_t{0});
        try {
            f.coin.validate();
        } catch (const std::exception& e) {
            throw ScenarioError(std::string{"coin scenario: "} + e.what());
        }
        if (!doc.contains("strategies")) throw ScenarioError("coin scenario: strategies required");
        const auto& strats = doc["strategies"];
        if (!strats.is_array() || strats.size() != f.coin.n)
            throw ScenarioError("strategies: expected one entry per forecaster");
        for (std::size_t k = 0; k < strats.size(); ++k) {
            auto s = strategy_from_json(strats[k], "strategies[" + std::to_string(k) + "]");
            if (s.m() != f.coin.m)
                throw ScenarioError("strategies[" + std::to_string(k) + "]: report length != m");
            f.strategies.push_back(std::move(s));
        }
    } else {
        if (!doc.contains("belief")) throw ScenarioError("belief scenario: belief table required");
        const auto& events = doc["belief"];
        if (!events.is_array() || events.empty())
            throw ScenarioError("belief: expected a non-empty array of per-event joint tables");
        for (std::size_t t = 0; t < events.size(); ++t) {
            const std::string at = "belief[" + std::to_string(t) + "]";
            if (!events[t].is_array() || events[t].empty())
                throw ScenarioError(at + ": expected a non-empty atom array");
            EventJoint ev;
            for (std::size_t k = 0; k < events[t].size(); ++k) {
                const std::string aat = at + "[" + std::to_string(k) + "]";
                const auto& a = events[t][k];
                if (!a.is_object() || !a.contains("r") || !a.contains("y") || !a.contains("w"))
                    throw ScenarioError(aat + ": expected {r, y, w}");
                JointAtom atom;
                atom.r = get_prob(a["r"], aat + ".r");
                const int y = a["y"].get<int>();
                if (y != 0 && y != 1) throw ScenarioError(aat + ".y: must be 0 or 1");
                atom.y = static_cast<std::uint8_t>(y);
                atom.w = a["w"].get<double>();
                if (!(atom.w > 0.0)) throw ScenarioError(aat + ".w: must be positive");
                ev.atoms.push_back(atom);
            }
            f.belief.events.push_back(std::move(ev));
        }
        try {
            f.belief.validate();
        } catch (const std::exception& e) {
            throw ScenarioError(std::string{"belief: "} + e.what());
        }
        if (doc.contains("report")) {
            f.report = strategy_from_json(doc["report"], "report");
            if (f.report.m() != f.belief.m())
                throw ScenarioError("report: report length != number of belief events");
        } else {
            f.report = MixedStrategy::pure(f.belief.marginal());
        }
    }
    return f;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ScenarioError(path + ": " + e.what());
    }
    return parse_scenario(doc);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace fclab
