#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fclab/certificate.hpp"
#include "fclab/dist.hpp"
#include "fclab/edgeworth.hpp"
#include "fclab/equilibrium.hpp"
#include "fclab/hedging.hpp"
#include "fclab/scenario.hpp"
#include "fclab/utility.hpp"

namespace {

using nlohmann::json;
using namespace fclab;

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitAssertion = 3;

int default_workers() {
    if (const char* env = std::getenv("FCLAB_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;
}

json base_report(const std::string& command, std::uint64_t seed) {
    return {{"command", command}, {"version", kToolkitVersion}, {"seed", seed}};
}

void emit(const std::string& out, const json& doc) {
    write_output(out, doc.dump(2) + "\n");
}

// Distribution of total_score(reports[1]) - total_score(reports[0]) in the
// canonical coin game with both mixed supports enumerated.
ScoreDiffDistribution coin_score_diff(const StrategyProfile& profile, std::size_t m, double p) {
    std::vector<ScoreDiffDistribution::Atom> atoms;
    Outcome y(m);
    for (const auto& [r0, w0] : profile[0].support)
        for (const auto& [r1, w1] : profile[1].support) {
            const std::uint64_t total = std::uint64_t{1} << m;
            for (std::uint64_t mask = 0; mask < total; ++mask) {
                double prob = w0 * w1;
                for (std::size_t t = 0; t < m; ++t) {
                    y[t] = (mask >> t) & 1;
                    prob *= y[t] ? p : 1.0 - p;
                }
                atoms.push_back({total_score(r1, y) - total_score(r0, y), prob});
            }
        }
    return ScoreDiffDistribution(std::move(atoms));
}

json cdf_to_json(const ScoreDiffDistribution& dist) {
    json rows = json::array();
    double cum = 0.0;
    for (const auto& a : dist.atoms()) {
        cum += a.weight;
        rows.push_back({{"x", a.value}, {"cdf", cum}});
    }
    return rows;
}

std::string cdf_to_csv(const ScoreDiffDistribution& dist) {
    std::ostringstream os;
    os << "x,cdf\n";
    double cum = 0.0;
    for (const auto& a : dist.atoms()) {
        cum += a.weight;
        os << format_double(a.value) << "," << format_double(cum) << "\n";
    }
    return os.str();
}

int cmd_mechanism_eval(const std::string& path, std::uint64_t seed_flag, bool seed_set,
                       std::uint64_t trials_flag, bool trials_set, int workers,
                       const std::string& out, const std::string& format) {
    ScenarioFile sc = load_scenario(path);
    const std::uint64_t seed = seed_set ? seed_flag : sc.seed;
    const std::uint64_t trials = trials_set ? trials_flag : sc.trials;
    json rep = base_report("mechanism-eval", seed);

    if (sc.kind == "coin") {
        const std::size_t m = sc.coin.m, n = sc.coin.n;
        json utilities = json::array();
        if (m <= kEnumerationCap) {
            for (std::size_t i = 0; i < n; ++i)
                utilities.push_back(exact_expected_utility(i, sc.strategies, m, sc.coin.p, workers));
            rep["method"] = "exact";
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                const auto est = monte_carlo_utility(i, sc.strategies, m, sc.coin.p, trials,
                                                     derive_seed(seed, i), workers);
                utilities.push_back({{"mean", est.mean}, {"half_width", est.half_width}});
            }
            rep["method"] = "monte-carlo";
            rep["trials"] = trials;
        }
        rep["utilities"] = utilities;
        if (n == 2 && m <= kEnumerationCap) {
            const auto diff = coin_score_diff(sc.strategies, m, sc.coin.p);
            rep["tie_probability"] = diff.mass_at_zero();
            rep["score_diff_cdf"] = cdf_to_json(diff);
            if (format == "csv") {
                write_output(out, cdf_to_csv(diff));
                return kExitOk;
            }
        }
    } else {
        const double u = expected_utility(sc.report, sc.belief);
        rep["utilities"] = {u, 1.0 - u};
        rep["method"] = "exact";
        // score-difference distribution at the support-weighted mean report
        const auto diff = convolve(score_diff_events(average_report(sc.report), sc.belief));
        rep["tie_probability"] = diff.mass_at_zero();
        rep["score_diff_cdf"] = cdf_to_json(diff);
        if (format == "csv") {
            write_output(out, cdf_to_csv(diff));
            return kExitOk;
        }
    }
    emit(out, rep);
    return kExitOk;
}

json strategy_utilities(const StrategyProfile& profile, std::size_t player, std::size_t m,
                        double p, bool symmetrized, int workers) {
    // utility of each support atom played pure, opponents fixed
    json rows = json::array();
    for (const auto& [r, w] : profile[player].support) {
        StrategyProfile trial = profile;
        trial[player] = symmetrized ? symmetrize(MixedStrategy::pure(r), m) : MixedStrategy::pure(r);
        rows.push_back({{"report", r},
                        {"weight", w},
                        {"utility", exact_expected_utility(player, trial, m, p, workers)}});
    }
    return rows;
}

int cmd_equilibrium_verify(std::size_t m, double p, double grid, int workers,
                           const std::string& out) {
    StrategyProfile profile;
    if (m == 1)
        profile = m1_n2_equilibrium(p);
    else if (m == 2)
        profile = m2_equilibrium(p);
    else
        throw ScenarioError("equilibrium-verify: only m = 1 and m = 2 profiles are known");

    BestResponseOptions opts;
    opts.grid_resolution = grid;
    opts.workers = workers;
    const auto report = verify_equilibrium(profile, m, p, 0, opts);

    json rep = base_report("equilibrium-verify", 0);
    rep["m"] = m;
    rep["p"] = p;
    rep["grid_resolution"] = grid;
    json players = json::array();
    for (std::size_t k = 0; k < profile.size(); ++k) {
        players.push_back({{"utility", report.utilities[k]},
                           {"best_response_gain", report.best_responses[k].gain},
                           {"best_response", report.best_responses[k].argmax},
                           {"support_utilities",
                            strategy_utilities(profile, k, m, p, k != 0, workers)}});
    }
    rep["players"] = players;
    const Report avg = average_report(profile[0]);
    rep["informed_average_report"] = avg;
    const double threshold = hedging_threshold();
    rep["hedging_threshold"] = threshold;
    rep["informed_classification"] = avg[0] > p ? "hedged" : "extremized";
    emit(out, rep);
    return kExitOk;
}

int cmd_hedging_verify(std::size_t m, double p, double eps, std::size_t n, std::uint64_t trials,
                       std::uint64_t seed, bool illustrative, int workers, const std::string& out) {
    HedgingParams params;
    if (illustrative) {
        // the worked example, stated with p = 0.9 and mapped through the
        // canonical inversion: p -> 0.1, belief deviation 0.2, radius 0.04
        params.m = m ? m : 32;
        params.p = 0.1;
        params.eps = 0.04;
    } else {
        params.m = m;
        params.p = p;
        params.eps = eps;
    }
    DominanceOptions opts;
    opts.skip_condition1 = illustrative;
    opts.workers = workers;
    const auto rep = dominance_check(params, n, trials, seed, opts);

    json doc = base_report("hedging-verify", seed);
    doc["m"] = params.m;
    doc["p"] = params.p;
    doc["eps"] = params.eps;
    doc["n"] = n;
    doc["trials"] = rep.samples;
    doc["condition1"] = {{"ok", rep.condition1.ok},
                         {"m_margin", rep.condition1.m_margin},
                         {"p_margin", rep.condition1.p_margin},
                         {"eps_margin", rep.condition1.eps_margin}};
    doc["lemma1_margin"] = rep.lemma1;
    doc["lemma2_margin"] = rep.lemma2;
    doc["violations"] = rep.violations;
    doc["strict_count"] = rep.strict_count;
    doc["gain_estimate"] = rep.gain;
    doc["ci"] = rep.ci_half_width;
    doc["dominance_frequency"] = rep.dominance_frequency;
    if (rep.witness) doc["witness"] = *rep.witness;
    emit(out, doc);
    return kExitOk;
}

int cmd_edgeworth_gamma(const std::string& path, double D, double delta, const std::string& out) {
    ScenarioFile sc = load_scenario(path);
    if (sc.kind != "belief") throw ScenarioError("edgeworth-gamma: needs a belief scenario");
    const auto cert = make_certificate(sc.belief, D, delta);

    json doc = base_report("edgeworth-gamma", sc.seed);
    doc["gamma_theorem2"] =
        cert.theorem2_vacuous ? json("vacuous") : json(cert.gamma_theorem2);
    doc["gamma_per_event"] = cert.gamma_per_event;
    doc["condition3_margins"] = {{"ok", cert.condition3.ok},
                                 {"sigma", cert.condition3.sigma_margin},
                                 {"utility_lower", cert.condition3.lower_margin},
                                 {"utility_upper", cert.condition3.upper_margin},
                                 {"ratio", cert.condition3.ratio_margin}};
    doc["delta_hat"] = cert.delta_hat;
    doc["D"] = cert.D;
    doc["D_hat_empirical"] = cert.D_hat_empirical;
    doc["sigma_i"] = cert.sigma_i;
    doc["utility_truthful"] = cert.utility_truthful;
    doc["utility_max"] = cert.utility_max;
    emit(out, doc);
    return kExitOk;
}

// Exact per-event score atoms of a fixed report under y ~ Bernoulli(p).
ScoreDiffDistribution score_distribution(const Report& r, double p) {
    std::vector<ScoreDiffDistribution> per_event;
    for (double rt : r) {
        std::vector<ScoreDiffDistribution::Atom> atoms = {
            {quadratic_score(rt, 0), 1.0 - p}, {quadratic_score(rt, 1), p}};
        per_event.emplace_back(std::move(atoms));
    }
    return convolve(per_event);
}

int cmd_figure1(std::size_t m, double p, const std::string& out) {
    struct Entry {
        std::string label;
        Report report;
    };
    const double ps = (0.5 + p) / 2.0;
    std::vector<Entry> entries = {{"informed_truthful", Report(m, p)},
                                  {"informed_hedged", Report(m, ps)},
                                  {"uninformed_truthful", Report(m, 0.5)},
                                  {"uninformed_extremized", Report(m, 0.0)}};

    std::ostringstream os;
    os << "strategy,bin_left,bin_right,mass\n";
    std::ostringstream summary;
    summary << "# strategy,mean,variance\n";
    const double bin = 0.1;
    for (const auto& e : entries) {
        const auto dist = score_distribution(e.report, p);
        summary << "# " << e.label << "," << format_double(dist.mean()) << ","
                << format_double(dist.variance()) << "\n";
        // aggregate atoms into fixed-width bins anchored at 0
        double bin_mass = 0.0;
        long long cur = std::llround(std::floor(dist.atoms().front().value / bin));
        for (const auto& a : dist.atoms()) {
            const long long k = static_cast<long long>(std::floor(a.value / bin));
            if (k != cur) {
                os << e.label << "," << format_double(static_cast<double>(cur) * bin) << ","
                   << format_double(static_cast<double>(cur + 1) * bin) << ","
                   << format_double(bin_mass) << "\n";
                cur = k;
                bin_mass = 0.0;
            }
            bin_mass += a.weight;
        }
        os << e.label << "," << format_double(static_cast<double>(cur) * bin) << ","
           << format_double(static_cast<double>(cur + 1) * bin) << "," << format_double(bin_mass)
           << "\n";
    }
    // win shares of each informed variant against each uninformed variant
    summary << "# pairing,informed_win_share\n";
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 2; b < 4; ++b) {
            StrategyProfile prof = {MixedStrategy::pure(entries[a].report),
                                    MixedStrategy::pure(entries[b].report)};
            summary << "# " << entries[a].label << "_vs_" << entries[b].label << ","
                    << format_double(exact_expected_utility(0, prof, m, p)) << "\n";
        }
    write_output(out, summary.str() + os.str());
    return kExitOk;
}

int cmd_figure2(double p, const std::string& out) {
    const auto profile = m2_equilibrium(p);
    json doc = base_report("figure2", 0);
    doc["p"] = p;
    json players = json::array();
    const std::vector<std::string> names = {"informed", "uninformed"};
    for (std::size_t k = 0; k < 2; ++k) {
        json support = json::array();
        for (const auto& [r, w] : profile[k].support)
            support.push_back({{"report", r}, {"weight", w}});
        players.push_back({{"name", names[k]}, {"support", support}});
    }
    doc["players"] = players;
    doc["informed_average_report"] = average_report(profile[0]);
    emit(out, doc);
    return kExitOk;
}

int cmd_gamma_sweep(std::size_t m_min, std::size_t m_max, std::size_t points, double var,
                    double k3, double k4, double abs3, double D, double delta,
                    const std::string& out) {
    if (m_min < 2 || m_max < m_min || points < 2)
        throw ScenarioError("gamma-sweep: need 2 <= m-min <= m-max and points >= 2");
    if (abs3 <= 0.0) abs3 = std::pow(var, 1.5);
    std::ostringstream os;
    os << "m,sigma_i,gamma_theorem2,gamma_per_event_max,condition3_pass\n";
    const double lmin = std::log(static_cast<double>(m_min));
    const double lmax = std::log(static_cast<double>(m_max));
    for (std::size_t k = 0; k < points; ++k) {
        const double frac = static_cast<double>(k) / static_cast<double>(points - 1);
        const auto m = static_cast<std::size_t>(std::llround(std::exp(lmin + frac * (lmax - lmin))));
        const double md = static_cast<double>(m);
        const double sigma = std::sqrt(md * var);
        const double c3 = k3 / var, c4 = k4 / var;
        const auto t2 = gamma_theorem2(sigma, c3, std::max(0.0, c4), D);

        EdgeworthParams loo;
        loo.mu = 0.0;
        loo.sigma = std::sqrt((md - 1.0) * var);
        loo.k3 = (md - 1.0) * k3;
        loo.k4 = (md - 1.0) * k4;
        loo.D = D;
        loo.m = m;
        const auto lg = gamma_leave_one_out(loo);
        const auto c3r = condition3_check(sigma, delta, md * abs3, 0.5, 0.5);

        os << m << "," << format_double(sigma) << ","
           << (t2.vacuous ? std::string("vacuous") : format_double(t2.gamma)) << ","
           << format_double(lg.gamma) << "," << (c3r.ok ? 1 : 0) << "\n";
    }
    write_output(out, os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forecasting-competition laboratory"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, format = "json";
    std::uint64_t seed = 1, trials = 100000;
    int workers = default_workers();
    double p = 0.4, eps = 0.0, grid = 0.01, D = 1.0, delta = 0.1;
    std::size_t m = 1, n = 2;
    bool illustrative = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path (stdout when omitted)");
        cmd->add_option("--workers", workers, "worker count (0 = library default)");
    };

    auto* me = app.add_subcommand("mechanism-eval", "utilities and score-difference CDF");
    me->add_option("--scenario", scenario_path, "scenario JSON")->required();
    auto* me_seed = me->add_option("--seed", seed, "override scenario seed");
    auto* me_trials = me->add_option("--trials", trials, "override scenario trials");
    me->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_common(me);

    auto* ev = app.add_subcommand("equilibrium-verify", "verify the known coin-game equilibria");
    ev->add_option("--m", m, "1 or 2")->required();
    ev->add_option("--p", p, "coin bias in (0, 1/2)")->required();
    ev->add_option("--grid", grid, "deviation grid resolution");
    add_common(ev);

    auto* hv = app.add_subcommand("hedging-verify", "dominance of the hedged report");
    hv->add_option("--m", m, "event count");
    hv->add_option("--p", p, "coin bias");
    hv->add_option("--eps", eps, "truthfulness radius");
    hv->add_option("--n", n, "forecaster count");
    hv->add_option("--trials", trials, "sample count");
    hv->add_option("--seed", seed, "rng seed");
    hv->add_flag("--illustrative", illustrative,
                 "run the worked-example parameters without the feasibility gate");
    add_common(hv);

    auto* eg = app.add_subcommand("edgeworth-gamma", "truthfulness certificate for a belief");
    eg->add_option("--scenario", scenario_path, "belief scenario JSON")->required();
    eg->add_option("--D", D, "Edgeworth convergence constant");
    eg->add_option("--delta", delta, "competitiveness slack");
    add_common(eg);

    auto* f1 = app.add_subcommand("figure1", "score histograms for hedged/extremized variants");
    f1->add_option("--m", m, "event count")->default_val(std::size_t{10});
    f1->add_option("--p", p, "coin bias")->default_val(0.3);
    add_common(f1);

    auto* f2 = app.add_subcommand("figure2", "two-event equilibrium geometry");
    f2->add_option("--p", p, "coin bias in (1/3, 1/2)")->required();
    add_common(f2);

    std::size_t m_min = 1000, m_max = 100000, points = 9;
    double var = 100.0, k3 = 0.0, k4 = 0.0, abs3 = 0.0;
    auto* gs = app.add_subcommand("gamma-sweep", "truthfulness radius vs event count");
    gs->add_option("--m-min", m_min, "smallest event count");
    gs->add_option("--m-max", m_max, "largest event count");
    gs->add_option("--points", points, "log-spaced sample count");
    gs->add_option("--var", var, "per-event score-difference variance");
    gs->add_option("--k3", k3, "per-event third cumulant");
    gs->add_option("--k4", k4, "per-event fourth cumulant");
    gs->add_option("--abs3", abs3, "per-event absolute third moment (default var^1.5)");
    gs->add_option("--D", D, "Edgeworth convergence constant");
    gs->add_option("--delta", delta, "competitiveness slack");
    add_common(gs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitSchema;
    }

    try {
        if (me->parsed())
            return cmd_mechanism_eval(scenario_path, seed, me_seed->count() > 0, trials,
                                      me_trials->count() > 0, workers, out_path, format);
        if (ev->parsed()) return cmd_equilibrium_verify(m, p, grid, workers, out_path);
        if (hv->parsed())
            return cmd_hedging_verify(m, p, eps, n, trials, seed, illustrative, workers, out_path);
        if (eg->parsed()) return cmd_edgeworth_gamma(scenario_path, D, delta, out_path);
        if (f1->parsed()) return cmd_figure1(m, p, out_path);
        if (f2->parsed()) return cmd_figure2(p, out_path);
        if (gs->parsed())
            return cmd_gamma_sweep(m_min, m_max, points, var, k3, k4, abs3, D, delta, out_path);
    } catch (const ScenarioError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::invalid_argument& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::exception& e) {
        std::cerr << "assertion failure: " << e.what() << "\n";
        return kExitAssertion;
    }
    return kExitOk;
}
