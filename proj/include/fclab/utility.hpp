#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fclab/belief.hpp"
#include "fclab/dist.hpp"
#include "fclab/mechanism.hpp"

namespace fclab {

// Finite-support distribution over report vectors.
struct MixedStrategy {
    std::vector<std::pair<Report, double>> support;

    static MixedStrategy pure(Report r) { return {{{std::move(r), 1.0}}}; }
    std::size_t m() const { return support.empty() ? 0 : support.front().first.size(); }
    void validate() const;
};

using StrategyProfile = std::vector<MixedStrategy>;

// Mixture of a strategy over all 2^m sign-flip reflections. Used to move a
// player with no knowledge of the coin biases into the canonically inverted
// game.
MixedStrategy symmetrize(const MixedStrategy& s, std::size_t m);

// Support-weighted mean report.
Report average_report(const MixedStrategy& s);

inline constexpr std::size_t kEnumerationCap = 20;

// Exact expected win probability of player i in the canonically inverted coin
// game: theta = (p,...,p), y ~ Bernoulli(p)^m, all strategies as given.
// Enumerates every outcome vector and support combination, splitting ties
// uniformly. Throws if m exceeds the enumeration cap (use Monte Carlo then).
// workers <= 0 means use the OpenMP default; results are identical for any
// worker count.
double exact_expected_utility(std::size_t i, const StrategyProfile& profile, std::size_t m,
                              double p, int workers = 0, double tie_tol = kTieTol);

// Exact expected win probability in the direct Bayes game: theta is drawn
// uniformly from {p, 1-p}^m, the informed player's strategy (given in the
// canonical frame) is mapped through the reflection matching theta, and
// y ~ Bernoulli(theta). Uninformed strategies are played as given.
double exact_expected_utility_direct(std::size_t i, const StrategyProfile& canonical_profile,
                                     std::size_t informed_index, std::size_t m, double p,
                                     double tie_tol = kTieTol);

// Exact expected utility of a (possibly mixed) report against a two-forecaster
// belief model, ties split in half (Pr[Delta < 0] + Pr[Delta = 0]/2 for the
// cumulative score difference Delta).
double tie_aware_utility(const Report& r, const BeliefModel& belief,
                         const ConvolveOptions& opts = {});
double expected_utility(const MixedStrategy& s, const BeliefModel& belief,
                        const ConvolveOptions& opts = {});

struct UtilityEstimate {
    double mean = 0.0;
    double half_width = 0.0;  // 95% CI half-width, normal approximation
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo estimate of exact_expected_utility (canonical coin game).
// Trials run in fixed-size blocks with sub-seeds derived from (seed, block),
// so the estimate is reproducible and independent of worker count.
UtilityEstimate monte_carlo_utility(std::size_t i, const StrategyProfile& profile, std::size_t m,
                                    double p, std::uint64_t trials, std::uint64_t seed,
                                    int workers = 0, double tie_tol = kTieTol);

// Monte Carlo estimate of the belief-model utility.
UtilityEstimate monte_carlo_utility(const MixedStrategy& s, const BeliefModel& belief,
                                    std::uint64_t trials, std::uint64_t seed, int workers = 0,
                                    double tie_tol = kTieTol);

}  // namespace fclab
