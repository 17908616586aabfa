#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fclab/utility.hpp"

namespace fclab {

// m = 1, n = 2 equilibrium: the informed player reports 0, the uninformed
// player mixes uniformly over the vertices {0, 1}. Stated in the canonically
// inverted frame (theta = p).
StrategyProfile m1_n2_equilibrium(double p);

// Profile for n >= 2 players: informed reports 0, every other player mixes
// uniformly over {0, 1}.
StrategyProfile m1_n_profile(double p, std::size_t n, std::size_t informed_index = 0);

// Exact informed utility at the profile above, by enumeration.
double m1_n_informed_utility(double p, std::size_t n);

// The closed form the derivation displays for the same quantity,
// (1/2^{n-1}) [sum_k C(n-1,k)/(k+1) + p/(n+1)]. Kept separate so enumeration
// and formula can be compared; they disagree for n = 2 (see the audit
// report).
double m1_n_informed_utility_closed_form(double p, std::size_t n);

// m = 2, n = 2 equilibrium candidate for p in (1/3, 1/2): informed mixes over
// the center and the two lower midpoints, uninformed over the center and the
// four quarter-corners.
StrategyProfile m2_equilibrium(double p);

// Root of (3-2p)/(4(2-p)) = p in (0, 1/2): below it the informed player's
// average report is hedged toward the center, above it extremized.
double hedging_threshold();

struct BestResponse {
    double gain = 0.0;          // best deviation utility minus profile utility
    Report argmax;              // lexicographically smallest maximizer
    double best_utility = 0.0;
    double profile_utility = 0.0;
    double grid_resolution = 0.0;
};

struct BestResponseOptions {
    double grid_resolution = 0.01;
    // Symmetrize each candidate deviation over all reflections before
    // evaluating. Required for uninformed players in the canonically
    // inverted game: they cannot condition on the coin biases, so their
    // deviations are reflection mixtures by construction.
    bool symmetrize_deviations = false;
    int workers = 0;
    double tie_tol = kTieTol;
};

// Exhaustive search over the per-coordinate deviation grid (full product grid
// for m <= 2, coordinate-wise refinement for larger m) in the canonical coin
// game.
BestResponse best_response_gain(const StrategyProfile& profile, std::size_t player, std::size_t m,
                                double p, const BestResponseOptions& opts = {});

struct EquilibriumReport {
    StrategyProfile profile;
    std::vector<double> utilities;
    std::vector<BestResponse> best_responses;
    double grid_resolution = 0.0;
};

// Utilities plus deviation search for every player.
EquilibriumReport verify_equilibrium(const StrategyProfile& profile, std::size_t m, double p,
                                     std::size_t informed_index, const BestResponseOptions& opts);

}  // namespace fclab
