#include "fclab/equilibrium.hpp"

#include <cmath>
#include <stdexcept>

namespace fclab {

StrategyProfile m1_n2_equilibrium(double p) { return m1_n_profile(p, 2); }

StrategyProfile m1_n_profile(double p, std::size_t n, std::size_t informed_index) {
    if (!(p > 0.0 && p < 0.5)) throw std::invalid_argument("m1_n_profile: p must be in (0, 1/2)");
    if (n < 2) throw std::invalid_argument("m1_n_profile: need n >= 2");
    StrategyProfile profile(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == informed_index)
            profile[k] = MixedStrategy::pure({0.0});
        else
            profile[k] = MixedStrategy{{{{0.0}, 0.5}, {{1.0}, 0.5}}};
    }
    return profile;
}

double m1_n_informed_utility(double p, std::size_t n) {
    return exact_expected_utility(0, m1_n_profile(p, n), 1, p);
}

double m1_n_informed_utility_closed_form(double p, std::size_t n) {
    double sum = 0.0;
    double binom = 1.0;  // C(n-1, k)
    for (std::size_t k = 0; k <= n - 1; ++k) {
        sum += binom / static_cast<double>(k + 1);
        binom = binom * static_cast<double>(n - 1 - k) / static_cast<double>(k + 1);
    }
    return (sum + p / static_cast<double>(n + 1)) / std::pow(2.0, static_cast<double>(n - 1));
}

StrategyProfile m2_equilibrium(double p) {
    if (!(p > 1.0 / 3.0 && p < 0.5))
        throw std::invalid_argument("m2_equilibrium: p must be in (1/3, 1/2)");
    const double denom = 2.0 - p;
    MixedStrategy informed;
    informed.support = {{{0.5, 0.5}, (1.0 - p) / denom},
                        {{0.0, 0.5}, 1.0 / (2.0 * denom)},
                        {{0.5, 0.0}, 1.0 / (2.0 * denom)}};
    MixedStrategy uninformed;
    uninformed.support = {{{0.5, 0.5}, 3.0 * p / denom},
                          {{0.25, 0.25}, (0.5 - p) / denom},
                          {{0.25, 0.75}, (0.5 - p) / denom},
                          {{0.75, 0.25}, (0.5 - p) / denom},
                          {{0.75, 0.75}, (0.5 - p) / denom}};
    return {informed, uninformed};
}

double hedging_threshold() {
    const double root = (5.0 - std::sqrt(13.0)) / 4.0;
    // root of (3-2p)/(4(2-p)) = p, i.e. 4p^2 - 10p + 3 = 0
    const double residual = 4.0 * root * root - 10.0 * root + 3.0;
    if (std::abs(residual) > 1e-12) throw std::logic_error("hedging_threshold: root check failed");
    return root;
}

namespace {

double deviation_utility(const StrategyProfile& profile, std::size_t player, const Report& dev,
                         std::size_t m, double p, const BestResponseOptions& opts) {
    StrategyProfile trial = profile;
    trial[player] = opts.symmetrize_deviations ? symmetrize(MixedStrategy::pure(dev), m)
                                               : MixedStrategy::pure(dev);
    return exact_expected_utility(player, trial, m, p, opts.workers, opts.tie_tol);
}

bool lex_less(const Report& a, const Report& b) {
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t] < b[t]) return true;
        if (a[t] > b[t]) return false;
    }
    return false;
}

}  // namespace

BestResponse best_response_gain(const StrategyProfile& profile, std::size_t player, std::size_t m,
                                double p, const BestResponseOptions& opts) {
    if (m > kEnumerationCap)
        throw std::invalid_argument("best_response_gain: m exceeds the enumeration cap");
    const std::size_t steps = static_cast<std::size_t>(std::llround(1.0 / opts.grid_resolution));
    auto grid_value = [&](std::size_t k) { return static_cast<double>(k) / static_cast<double>(steps); };

    BestResponse result;
    result.grid_resolution = 1.0 / static_cast<double>(steps);
    StrategyProfile base = profile;
    if (opts.symmetrize_deviations) base[player] = symmetrize(profile[player], m);
    result.profile_utility = exact_expected_utility(player, base, m, p, opts.workers, opts.tie_tol);

    double best = -1.0;
    Report best_dev;
    if (m <= 2) {
        // full product grid
        std::vector<std::size_t> idx(m, 0);
        Report dev(m);
        bool done = false;
        while (!done) {
            for (std::size_t t = 0; t < m; ++t) dev[t] = grid_value(idx[t]);
            const double u = deviation_utility(profile, player, dev, m, p, opts);
            if (u > best + 1e-15 || (std::abs(u - best) <= 1e-15 && lex_less(dev, best_dev))) {
                best = u;
                best_dev = dev;
            }
            done = true;
            for (std::size_t t = m; t-- > 0;) {
                if (++idx[t] <= steps) {
                    done = false;
                    break;
                }
                idx[t] = 0;
            }
        }
    } else {
        // coordinate-wise refinement from the profile's average report
        Report dev = average_report(profile[player]);
        for (double& v : dev) v = std::round(v * static_cast<double>(steps)) / static_cast<double>(steps);
        best = deviation_utility(profile, player, dev, m, p, opts);
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t t = 0; t < m; ++t) {
                Report trial = dev;
                for (std::size_t k = 0; k <= steps; ++k) {
                    trial[t] = grid_value(k);
                    const double u = deviation_utility(profile, player, trial, m, p, opts);
                    if (u > best + 1e-12) {
                        best = u;
                        dev = trial;
                        improved = true;
                    }
                }
            }
        }
        best_dev = dev;
    }
    result.best_utility = best;
    result.argmax = best_dev;
    result.gain = best - result.profile_utility;
    return result;
}

EquilibriumReport verify_equilibrium(const StrategyProfile& profile, std::size_t m, double p,
                                     std::size_t informed_index, const BestResponseOptions& opts) {
    EquilibriumReport report;
    report.profile = profile;
    report.grid_resolution = opts.grid_resolution;
    for (std::size_t k = 0; k < profile.size(); ++k) {
        BestResponseOptions player_opts = opts;
        player_opts.symmetrize_deviations = (k != informed_index);
        StrategyProfile eval = profile;
        if (player_opts.symmetrize_deviations) eval[k] = symmetrize(profile[k], m);
        report.utilities.push_back(
            exact_expected_utility(k, eval, m, p, opts.workers, opts.tie_tol));
        report.best_responses.push_back(best_response_gain(profile, k, m, p, player_opts));
    }
    return report;
}

}  // namespace fclab
