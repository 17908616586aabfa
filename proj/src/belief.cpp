#include "fclab/belief.hpp"

#include <cmath>
#include <stdexcept>

namespace fclab {

void CoinScenario::validate() const {
    if (!(p > 0.0 && p < 0.5)) throw std::invalid_argument("CoinScenario: p must be in (0, 1/2)");
    if (n < 1) throw std::invalid_argument("CoinScenario: need at least one player");
    if (informed_index >= n) throw std::invalid_argument("CoinScenario: informed_index out of range");
    if (m < 1) throw std::invalid_argument("CoinScenario: need at least one event");
}

Report Reflection::apply(const Report& r) const {
    if (r.size() != flip.size()) throw std::invalid_argument("Reflection: dimension mismatch");
    Report out(r.size());
    for (std::size_t t = 0; t < r.size(); ++t) out[t] = flip[t] ? 1.0 - r[t] : r[t];
    return out;
}

Outcome Reflection::apply(const Outcome& y) const {
    if (y.size() != flip.size()) throw std::invalid_argument("Reflection: dimension mismatch");
    Outcome out(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) out[t] = flip[t] ? (y[t] ? 0 : 1) : y[t];
    return out;
}

std::vector<Reflection> all_reflections(std::size_t m) {
    if (m > 20) throw std::invalid_argument("all_reflections: m too large to enumerate");
    std::vector<Reflection> refs;
    refs.reserve(std::size_t{1} << m);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        Reflection r;
        r.flip.resize(m);
        for (std::size_t t = 0; t < m; ++t) r.flip[t] = (mask >> t) & 1;
        refs.push_back(std::move(r));
    }
    return refs;
}

CoinWorld sample_coin_world(const CoinScenario& scenario, std::uint64_t seed) {
    scenario.validate();
    Rng rng(derive_seed(seed, 0));
    CoinWorld w;
    w.theta.resize(scenario.m);
    w.y.resize(scenario.m);
    for (std::size_t t = 0; t < scenario.m; ++t)
        w.theta[t] = rng.next_bernoulli(0.5) ? 1.0 - scenario.p : scenario.p;
    for (std::size_t t = 0; t < scenario.m; ++t) w.y[t] = rng.next_bernoulli(w.theta[t]) ? 1 : 0;
    return w;
}

CanonicalWorld canonical_inversion(const std::vector<double>& theta,
                                   const std::vector<Report>& reports, const Outcome& y,
                                   double p) {
    const std::size_t m = theta.size();
    Reflection ref;
    ref.flip.resize(m);
    for (std::size_t t = 0; t < m; ++t) {
        const bool is_p = std::abs(theta[t] - p) <= std::abs(theta[t] - (1.0 - p));
        ref.flip[t] = is_p ? 0 : 1;
    }
    CanonicalWorld out;
    out.theta.assign(m, p);
    out.reports.reserve(reports.size());
    for (const auto& r : reports) out.reports.push_back(ref.apply(r));
    out.y = ref.apply(y);
    return out;
}

double EventJoint::outcome_marginal() const {
    double p1 = 0.0;
    for (const auto& a : atoms)
        if (a.y) p1 += a.w;
    return p1;
}

void EventJoint::validate() const {
    if (atoms.empty()) throw std::invalid_argument("EventJoint: empty support");
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!(a.r >= 0.0 && a.r <= 1.0)) throw std::invalid_argument("EventJoint: report outside [0,1]");
        if (a.y != 0 && a.y != 1) throw std::invalid_argument("EventJoint: outcome must be 0 or 1");
        if (!(a.w > 0.0)) throw std::invalid_argument("EventJoint: weights must be positive");
        total += a.w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("EventJoint: weights must sum to 1");
}

EventJoint EventJoint::independent(const std::vector<std::pair<double, double>>& report_dist,
                                   double outcome_p) {
    EventJoint j;
    for (const auto& [r, w] : report_dist) {
        if (outcome_p < 1.0) j.atoms.push_back({r, 0, w * (1.0 - outcome_p)});
        if (outcome_p > 0.0) j.atoms.push_back({r, 1, w * outcome_p});
    }
    return j;
}

Report BeliefModel::marginal() const {
    Report p(events.size());
    for (std::size_t t = 0; t < events.size(); ++t) p[t] = events[t].outcome_marginal();
    return p;
}

void BeliefModel::validate() const {
    if (events.empty()) throw std::invalid_argument("BeliefModel: no events");
    for (const auto& e : events) e.validate();
}

}  // namespace fclab
