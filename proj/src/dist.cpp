#include "fclab/dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fclab {

ScoreDiffDistribution::ScoreDiffDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("ScoreDiffDistribution: no atoms");
    finalize();
}

ScoreDiffDistribution ScoreDiffDistribution::point_mass(double value) {
    return ScoreDiffDistribution({{value, 1.0}});
}

void ScoreDiffDistribution::finalize() {
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    // coalesce near-identical values (weighted mean keeps rationals stable)
    std::vector<Atom> merged;
    merged.reserve(atoms_.size());
    for (const auto& a : atoms_) {
        if (!merged.empty() && a.value - merged.back().value <= kMergeTol) {
            Atom& m = merged.back();
            const double w = m.weight + a.weight;
            m.value = (m.value * m.weight + a.value * a.weight) / w;
            m.weight = w;
        } else {
            merged.push_back(a);
        }
    }
    atoms_ = std::move(merged);

    double total = 0.0;
    for (const auto& a : atoms_) total += a.weight;
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("ScoreDiffDistribution: weights must sum to 1");

    mu_ = 0.0;
    for (const auto& a : atoms_) mu_ += a.weight * a.value;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0, p3 = 0.0;
    for (const auto& a : atoms_) {
        const double d = a.value - mu_;
        const double d2 = d * d;
        m2 += a.weight * d2;
        m3 += a.weight * d2 * d;
        m4 += a.weight * d2 * d2;
        p3 += a.weight * d2 * std::abs(d);
    }
    var_ = m2;
    k3_ = m3;
    k4_ = m4 - 3.0 * m2 * m2;
    p3_ = p3;
}

double ScoreDiffDistribution::cdf(double x) const {
    double c = 0.0;
    for (const auto& a : atoms_) {
        if (a.value > x) break;
        c += a.weight;
    }
    return c;
}

double ScoreDiffDistribution::mass_at_zero(double tol) const {
    double c = 0.0;
    for (const auto& a : atoms_) {
        if (a.value > tol) break;
        if (std::abs(a.value) <= tol) c += a.weight;
    }
    return c;
}

double ScoreDiffDistribution::min_value() const { return atoms_.front().value; }
double ScoreDiffDistribution::max_value() const { return atoms_.back().value; }

ScoreDiffDistribution score_diff_event(double r, const EventJoint& event) {
    event.validate();
    std::vector<ScoreDiffDistribution::Atom> atoms;
    atoms.reserve(event.atoms.size());
    for (const auto& a : event.atoms) {
        const double diff = quadratic_score(a.r, a.y) - quadratic_score(r, a.y);
        atoms.push_back({diff, a.w});
    }
    return ScoreDiffDistribution(std::move(atoms));
}

namespace {

std::vector<ScoreDiffDistribution::Atom> bin_atoms(
    const std::vector<ScoreDiffDistribution::Atom>& atoms, double resolution) {
    std::vector<ScoreDiffDistribution::Atom> binned;
    binned.reserve(atoms.size());
    for (const auto& a : atoms) {
        // nearest bin center, round half to even
        const double center = std::nearbyint(a.value / resolution) * resolution;
        binned.push_back({center, a.weight});
    }
    return binned;
}

ScoreDiffDistribution convolve_pair(const ScoreDiffDistribution& a, const ScoreDiffDistribution& b,
                                    const ConvolveOptions& opts, bool& binned_mode) {
    const auto& xa = a.atoms();
    const auto& xb = b.atoms();
    std::vector<ScoreDiffDistribution::Atom> prod;
    prod.reserve(xa.size() * xb.size());
    for (const auto& u : xa)
        for (const auto& v : xb) prod.push_back({u.value + v.value, u.weight * v.weight});
    if (binned_mode || prod.size() > opts.atom_cap) {
        binned_mode = true;
        prod = bin_atoms(prod, opts.resolution);
    }
    return ScoreDiffDistribution(std::move(prod));
}

}  // namespace

ScoreDiffDistribution convolve(const std::vector<ScoreDiffDistribution>& dists,
                               const ConvolveOptions& opts) {
    if (dists.empty()) throw std::invalid_argument("convolve: need at least one distribution");
    bool binned = false;
    ScoreDiffDistribution acc = dists.front();
    for (std::size_t k = 1; k < dists.size(); ++k) acc = convolve_pair(acc, dists[k], opts, binned);
    return acc;
}

SumMoments sum_moments(const std::vector<ScoreDiffDistribution>& dists) {
    SumMoments s;
    for (const auto& d : dists) {
        s.mu += d.mean();
        s.var += d.variance();
        s.k3 += d.k3();
        s.k4 += d.k4();
        s.abs3 += d.abs3();
    }
    return s;
}

std::vector<ScoreDiffDistribution> score_diff_events(const Report& r, const BeliefModel& belief) {
    if (r.size() != belief.m()) throw std::invalid_argument("score_diff_events: dimension mismatch");
    std::vector<ScoreDiffDistribution> out;
    out.reserve(belief.m());
    for (std::size_t t = 0; t < belief.m(); ++t) out.push_back(score_diff_event(r[t], belief.events[t]));
    return out;
}

SumMoments leave_one_out_stats(const Report& r, const BeliefModel& belief, std::size_t t) {
    if (belief.m() < 2) throw std::invalid_argument("leave_one_out_stats: needs m >= 2");
    if (t >= belief.m()) throw std::invalid_argument("leave_one_out_stats: event index out of range");
    std::vector<ScoreDiffDistribution> rest;
    rest.reserve(belief.m() - 1);
    for (std::size_t k = 0; k < belief.m(); ++k)
        if (k != t) rest.push_back(score_diff_event(r[k], belief.events[k]));
    return sum_moments(rest);
}

}  // namespace fclab
