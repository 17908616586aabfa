#include "fclab/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fclab/dist.hpp"
#include "fclab/utility.hpp"

namespace fclab {

MomentEnvelope moment_envelope(const BeliefModel& belief, std::size_t grid_steps) {
    belief.validate();
    if (grid_steps < 1) throw std::invalid_argument("moment_envelope: grid_steps must be >= 1");
    MomentEnvelope env;
    double var_min_sum = 0.0;
    for (const auto& event : belief.events) {
        double var_min = std::numeric_limits<double>::infinity();
        double abs3_max = 0.0, k3_max = -std::numeric_limits<double>::infinity(),
               k4_max = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k <= grid_steps; ++k) {
            const double r = static_cast<double>(k) / static_cast<double>(grid_steps);
            const auto d = score_diff_event(r, event);
            var_min = std::min(var_min, d.variance());
            abs3_max = std::max(abs3_max, d.abs3());
            k3_max = std::max(k3_max, d.k3());
            k4_max = std::max(k4_max, d.k4());
        }
        var_min_sum += var_min;
        env.abs3_max += abs3_max;
        env.k3_max += k3_max;
        env.k4_max += k4_max;
    }
    env.sigma_min = std::sqrt(var_min_sum);
    return env;
}

namespace {

bool lex_less(const Report& a, const Report& b) {
    for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t] < b[t]) return true;
        if (a[t] > b[t]) return false;
    }
    return false;
}

}  // namespace

BeliefBestResponse best_response_belief(const BeliefModel& belief, std::size_t grid_steps) {
    belief.validate();
    const std::size_t m = belief.m();
    auto grid_value = [&](std::size_t k) {
        return static_cast<double>(k) / static_cast<double>(grid_steps);
    };
    auto utility = [&](const Report& r) { return tie_aware_utility(r, belief); };

    BeliefBestResponse out;
    out.grid_resolution = 1.0 / static_cast<double>(grid_steps);
    double best = -1.0;
    Report best_r;

    if (m <= 2) {
        std::vector<std::size_t> idx(m, 0);
        Report r(m);
        bool done = false;
        while (!done) {
            for (std::size_t t = 0; t < m; ++t) r[t] = grid_value(idx[t]);
            const double u = utility(r);
            if (u > best + 1e-15 || (std::abs(u - best) <= 1e-15 && lex_less(r, best_r))) {
                best = u;
                best_r = r;
            }
            done = true;
            for (std::size_t t = m; t-- > 0;) {
                if (++idx[t] <= grid_steps) {
                    done = false;
                    break;
                }
                idx[t] = 0;
            }
        }
    } else {
        std::vector<Report> starts = {belief.marginal(), Report(m, 0.5)};
        for (Report start : starts) {
            for (double& v : start)
                v = std::round(v * static_cast<double>(grid_steps)) / static_cast<double>(grid_steps);
            double cur = utility(start);
            bool improved = true;
            while (improved) {
                improved = false;
                for (std::size_t t = 0; t < m; ++t) {
                    Report trial = start;
                    for (std::size_t k = 0; k <= grid_steps; ++k) {
                        trial[t] = grid_value(k);
                        const double u = utility(trial);
                        if (u > cur + 1e-12) {
                            cur = u;
                            start = trial;
                            improved = true;
                        }
                    }
                }
            }
            if (cur > best + 1e-15 || (std::abs(cur - best) <= 1e-15 && lex_less(start, best_r))) {
                best = cur;
                best_r = start;
            }
        }
    }
    out.argmax = best_r;
    out.utility = best;
    return out;
}

double empirical_edgeworth_constant(const Report& r, const BeliefModel& belief) {
    const std::size_t m = belief.m();
    if (m < 2)
        throw std::invalid_argument("empirical_edgeworth_constant: need m >= 2");
    const auto events = score_diff_events(r, belief);
    double worst = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        std::vector<ScoreDiffDistribution> others;
        for (std::size_t s = 0; s < m; ++s)
            if (s != t) others.push_back(events[s]);
        const auto moments = sum_moments(others);
        if (!(moments.var > 0.0))
            throw std::invalid_argument(
                "empirical_edgeworth_constant: degenerate leave-one-out distribution");
        const auto params = EdgeworthParams::from_moments(moments, m);
        const auto G = convolve(others);
        const auto& atoms = G.atoms();
        double sup = 0.0;
        double cum = 0.0;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            const double e = edgeworth_cdf(params, atoms[k].value);
            sup = std::max(sup, std::abs(cum - e));  // left limit of G
            cum += atoms[k].weight;
            sup = std::max(sup, std::abs(cum - e));
            if (k + 1 < atoms.size()) {
                const double mid = 0.5 * (atoms[k].value + atoms[k + 1].value);
                sup = std::max(sup, std::abs(cum - edgeworth_cdf(params, mid)));
            }
        }
        const double sigma = std::sqrt(moments.var);
        sup = std::max(sup, std::abs(edgeworth_cdf(params, atoms.front().value - sigma)));
        sup = std::max(sup, std::abs(1.0 - edgeworth_cdf(params, atoms.back().value + sigma)));
        worst = std::max(worst, sup);
    }
    return static_cast<double>(m) * worst;
}

TruthfulnessCertificate make_certificate(const BeliefModel& belief, double D, double delta,
                                         std::size_t grid_steps) {
    belief.validate();
    const std::size_t m = belief.m();
    const Report truth = belief.marginal();

    TruthfulnessCertificate cert;
    cert.D = D;
    const auto env = moment_envelope(belief, grid_steps);
    cert.sigma_i = env.sigma_min;
    cert.utility_truthful = tie_aware_utility(truth, belief);
    cert.utility_max = best_response_belief(belief, grid_steps).utility;
    cert.condition3 = condition3_check(env.sigma_min, delta, env.abs3_max, cert.utility_truthful,
                                       cert.utility_max);
    cert.delta_hat = cert.condition3.delta_hat;

    const auto t2 = gamma_theorem2(env.sigma_min, env.c3(), std::max(0.0, env.c4()), D);
    cert.gamma_theorem2 = t2.gamma;
    cert.theorem2_vacuous = t2.vacuous;

    if (m >= 2) {
        bool all_continuous = true;
        for (std::size_t t = 0; t < m; ++t) {
            const auto stats = leave_one_out_stats(truth, belief, t);
            if (!(stats.var > 0.0)) {
                cert.gamma_per_event.push_back(std::numeric_limits<double>::infinity());
                all_continuous = false;
                continue;
            }
            const auto params = EdgeworthParams::from_moments(stats, m, D);
            try {
                cert.gamma_per_event.push_back(gamma_leave_one_out(params).gamma);
            } catch (const std::invalid_argument&) {
                cert.gamma_per_event.push_back(std::numeric_limits<double>::infinity());
            }
        }
        if (all_continuous) cert.D_hat_empirical = empirical_edgeworth_constant(truth, belief);
    }
    return cert;
}

}  // namespace fclab
