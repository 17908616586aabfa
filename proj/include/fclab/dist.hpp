#pragma once

#include <cstddef>
#include <vector>

#include "fclab/belief.hpp"

namespace fclab {

// Discrete distribution of a (per-event or cumulative) score difference
// Delta = S(R_j, Y) - S(r_i, Y). Atoms are kept sorted by value; atoms closer
// than the merge tolerance are coalesced.
class ScoreDiffDistribution {
  public:
    struct Atom {
        double value;
        double weight;
    };

    ScoreDiffDistribution() = default;
    explicit ScoreDiffDistribution(std::vector<Atom> atoms);

    static ScoreDiffDistribution point_mass(double value);

    const std::vector<Atom>& atoms() const { return atoms_; }

    double mean() const { return mu_; }
    double variance() const { return var_; }
    double k3() const { return k3_; }   // third cumulant (= third central moment)
    double k4() const { return k4_; }   // fourth cumulant (mu4 - 3 sigma^4)
    double abs3() const { return p3_; } // third absolute central moment

    // Pr[X <= x], right-continuous.
    double cdf(double x) const;
    // Pr[|X| <= tol], mass at zero up to the merge tolerance.
    double mass_at_zero(double tol = 1e-9) const;

    double min_value() const;
    double max_value() const;

    static constexpr double kMergeTol = 1e-9;

  private:
    void finalize();
    std::vector<Atom> atoms_;
    double mu_ = 0.0, var_ = 0.0, k3_ = 0.0, k4_ = 0.0, p3_ = 0.0;
};

// Per-event score-difference distribution of Delta = S(R_j, Y) - S(r, Y)
// under the event's joint belief.
ScoreDiffDistribution score_diff_event(double r, const EventJoint& event);

struct ConvolveOptions {
    std::size_t atom_cap = 2'000'000;  // switch to binning above this many product atoms
    double resolution = 1e-4;          // bin width once binned
};

// Distribution of the sum of independent terms. Exact while the atom count
// stays under the cap, binned to the stated resolution afterwards (mass to
// the nearest bin center, round half to even).
ScoreDiffDistribution convolve(const std::vector<ScoreDiffDistribution>& dists,
                               const ConvolveOptions& opts = {});

// Cumulative-sum moments by cumulant additivity, without building the full
// convolution. abs3 is subadditive, so the aggregate reports the sum of
// per-term absolute third moments (the Berry-Esseen numerator).
struct SumMoments {
    double mu = 0.0;
    double var = 0.0;
    double k3 = 0.0;
    double k4 = 0.0;
    double abs3 = 0.0;
};
SumMoments sum_moments(const std::vector<ScoreDiffDistribution>& dists);

// Per-event distributions for a full report vector against a belief model.
std::vector<ScoreDiffDistribution> score_diff_events(const Report& r, const BeliefModel& belief);

// Moments of sum_{t' != t} Delta_{t'} for fixed off-event reports. Requires
// m >= 2.
SumMoments leave_one_out_stats(const Report& r, const BeliefModel& belief, std::size_t t);

}  // namespace fclab
