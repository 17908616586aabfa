#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fclab/mechanism.hpp"
#include "fclab/rng.hpp"

namespace fclab {

// Parameters of the hedging counterexample: the informed player's belief is
// (p,...,p); hedging means reporting r* = (p*,...,p*) with p* = (1/2 + p)/2.
struct HedgingParams {
    std::size_t m = 0;
    double p = 0.0;
    double eps = 0.0;  // l2 truthfulness radius (normalized by sqrt(m))

    double p_star() const { return (0.5 + p) / 2.0; }
    Report r_star() const { return Report(m, p_star()); }
};

struct Condition1Result {
    bool ok = false;
    double m_margin = 0.0;    // m - 21
    double p_margin = 0.0;    // p_bound - p
    double eps_margin = 0.0;  // eps_bound - eps
    double p_bound = 0.0;
    double eps_bound = 0.0;
};

// The three printed inequalities: m >= 21; p < 1/2 - 2 sqrt((2/sqrt m)(1 - 2/sqrt m));
// eps < 1/2 - sqrt(p*(1-p*)) - 2/sqrt m. All margins are returned whether or
// not they hold.
Condition1Result condition1_check(std::size_t m, double p, double eps);

// Smallest m for which the p-bound is positive, found by scan.
std::size_t condition1_smallest_feasible_m();

// Triples (m, p, eps) strictly inside the feasible region, found by scanning
// m and taking p and eps at half their bounds.
std::vector<HedgingParams> condition1_feasible_triples(std::size_t count);

// Squared distances from the all-q vector to any outcome with Hamming weight
// w: ||q 1 - y||^2 = m q^2 + w (1 - 2q).
double weight_class_distance_sq(std::size_t m, double q, std::size_t w);

// Smallest margin of sqrt(m)(1/2 - eps) - (d*(w) + 2) over integer weights
// w in [0, floor(p* m)]. Positive margin certifies that r* beats every
// opponent report in the eps sqrt(m) ball around the center for those
// outcomes. Throws if Condition 1 fails.
double lemma1_margin(std::size_t m, double p, double eps);

// Smallest slack of (d_p(w) - eps sqrt(m)) - d*(w) - 2 over integer weights
// w in [ceil(p* m), m]; also checks that d_p - d* is increasing over that
// range. Throws if Condition 1 fails.
double lemma2_margin(std::size_t m, double p, double eps);

// Uniform sample from the l2 ball of radius radius*sqrt(m) around the center,
// intersected with the unit cube (rejection).
Report sample_ball_report(const Report& center, double radius, std::uint64_t seed);

struct DominanceReport {
    Condition1Result condition1;
    double lemma1 = 0.0;
    double lemma2 = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;    // outcomes where U_i(r*) < U_i(r_i)
    std::uint64_t strict_count = 0;  // outcomes where U_i(r*) > U_i(r_i)
    double gain = 0.0;               // estimate of E[U_i(r*) - U_i(r_i)] under y ~ Bern(p)^m
    double ci_half_width = 0.0;      // 95% CI half-width of the gain
    double dominance_frequency = 0.0;  // fraction of samples with U_i(r*) >= U_i(r_i)
    std::uint64_t seed = 0;
    std::optional<std::string> witness;  // first weak-dominance violation, if any
};

struct DominanceOptions {
    // When set, skip the Condition 1 gate and only report the empirical
    // dominance frequency. Useful for small illustrative parameters that sit
    // outside the feasible region.
    bool skip_condition1 = false;
    int workers = 0;
};

// Samples eps-l2-truthful reports (r_i around the belief, each opponent
// around the center) and outcome vectors, and measures hedging dominance.
// Outcomes are sampled stratified by Hamming weight with importance weights
// from the Bernoulli(p)^m law, so the exponentially rare region where the
// improvement is strict still gets probed; the gain estimate remains an
// unbiased estimate under y ~ Bernoulli(p)^m.
DominanceReport dominance_check(const HedgingParams& params, std::size_t n, std::uint64_t trials,
                                std::uint64_t seed, const DominanceOptions& opts = {});

}  // namespace fclab
