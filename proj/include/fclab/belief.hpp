#pragma once

#include <cstdint>
#include <vector>

#include "fclab/mechanism.hpp"
#include "fclab/rng.hpp"

namespace fclab {

// The p-biased coin setting: m events, each with bias p or 1-p chosen
// uniformly; one informed forecaster learns the biases, everyone else keeps
// the prior 1/2.
struct CoinScenario {
    std::size_t m = 1;
    std::size_t n = 2;
    double p = 0.3;  // in (0, 1/2)
    std::size_t informed_index = 0;

    void validate() const;
};

// Sign-flip reflection of the hypercube: coordinate t maps r_t -> 1 - r_t iff
// t is in the flip set.
struct Reflection {
    std::vector<std::uint8_t> flip;  // length m, 1 = flip

    Report apply(const Report& r) const;
    Outcome apply(const Outcome& y) const;
};

// All 2^m reflections, flip sets enumerated by bitmask. m is capped so the
// enumeration stays desk-scale.
std::vector<Reflection> all_reflections(std::size_t m);

struct CoinWorld {
    std::vector<double> theta;  // each entry in {p, 1-p}
    Outcome y;
};

// Draw theta uniformly from {p, 1-p}^m, then y_t ~ Bernoulli(theta_t).
CoinWorld sample_coin_world(const CoinScenario& scenario, std::uint64_t seed);

// Reflect every coordinate with theta_t = 1-p so theta becomes (p,...,p);
// transforms reports and outcomes consistently.
struct CanonicalWorld {
    std::vector<double> theta;
    std::vector<Report> reports;
    Outcome y;
};
CanonicalWorld canonical_inversion(const std::vector<double>& theta,
                                   const std::vector<Report>& reports, const Outcome& y,
                                   double p);

// One atom of a per-event joint: opponent report value, outcome bit, weight.
struct JointAtom {
    double r = 0.5;
    std::uint8_t y = 0;
    double w = 1.0;
};

// Finite joint distribution over (opponent report, outcome) for one event.
struct EventJoint {
    std::vector<JointAtom> atoms;

    double outcome_marginal() const;  // Pr[Y = 1]
    void validate() const;

    // Independent product of an opponent-report distribution and an outcome
    // bias.
    static EventJoint independent(const std::vector<std::pair<double, double>>& report_dist,
                                  double outcome_p);
};

// Per-event joint beliefs, independent across events.
struct BeliefModel {
    std::vector<EventJoint> events;

    std::size_t m() const { return events.size(); }
    Report marginal() const;  // belief vector p_i, one Pr[Y_t = 1] per event
    void validate() const;
};

}  // namespace fclab
