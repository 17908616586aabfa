#pragma once

#include <cstddef>
#include <limits>

#include "fclab/belief.hpp"
#include "fclab/dist.hpp"

namespace fclab {

// Probabilists' Hermite polynomial He_l(x), 0 <= l <= 7, via the recurrence
// He_{l+1} = x He_l - l He_{l-1}.
double hermite(int l, double x);

// Standard normal pdf and cdf.
double normal_pdf(double x);
double normal_cdf(double x);

// Moments of a sum of independent score differences, in the ratio convention
// C_l = kappa_l / sigma^2. D is the Edgeworth convergence constant (the
// uniform bound D/m on the gap between the true CDF and the expansion); it is
// a configuration input, default 1.
struct EdgeworthParams {
    double mu = 0.0;
    double sigma = 1.0;
    double k3 = 0.0;
    double k4 = 0.0;
    double D = 1.0;
    std::size_t m = 1;

    double c3() const { return k3 / (sigma * sigma); }
    double c4() const { return k4 / (sigma * sigma); }

    static EdgeworthParams from_moments(const SumMoments& s, std::size_t m, double D = 1.0);
};

// Two-term Edgeworth expansion
//   E(x) = Phi(z) - phi(z) (k3/sigma^3) He2(z)/6
//        + phi(z) [ (k3/sigma^3)^2 He5(z)/72 + (k4/sigma^4) He3(z)/24 ],
// z = (x - mu)/sigma. Not a CDF; may leave [0,1] slightly.
double edgeworth_cdf(const EdgeworthParams& params, double x);

struct AffineFit {
    double beta = 0.0;   // slope E'(0)
    double alpha = 0.0;  // intercept E(0)
    double eps = 0.0;    // sup_{z in [-1,1]} |E''(z)|
};

// Closed-form slope and intercept, and the Lagrange error bound maximized
// over z in [-1,1] (2001-point grid plus golden-section refinement).
AffineFit affine_fit(const EdgeworthParams& params);

// gamma = sqrt(2 eps / beta); a report farther than gamma from the belief is
// strictly worse under a (beta, alpha, eps)-approximately-affine CDF. Throws
// if beta <= 0 (the affineness regime has collapsed).
double gamma_from_affine(const AffineFit& fit);

struct LeaveOneOutGamma {
    double gamma = 0.0;
    double A = 0.0;
    double B = 0.0;
    double denominator = 0.0;  // 1 - B/sigma; must stay positive
};

// Per-event truthfulness radius: smallest gamma with
//   gamma^2/2 >= e^{mu^2/sigma^2} (sigma^{-2}(|mu| + A) + sigma D/m) / (1 - B/sigma),
// A = 1 + 5|C3| + 6 C3^2/sigma + |C4|/sigma, B = 3|C3| + 2 C3^2/sigma + 2|C4|/sigma.
// Throws when the denominator is not positive.
LeaveOneOutGamma gamma_leave_one_out(const EdgeworthParams& params);

struct Condition3Result {
    bool ok = false;
    double sigma_margin = 0.0;    // sigma_i - 4
    double lower_margin = 0.0;    // utility_truthful - (1/2 - delta)
    double upper_margin = 0.0;    // (1/2 + delta) - utility_max
    double ratio_margin = 0.0;    // 0.33 - (P/sigma^3 + delta)
    double delta_hat = 0.0;       // delta + P/sigma^3
};

// The confident-forecaster condition: sigma_i >= 4; truthful utility at least
// 1/2 - delta and no report above 1/2 + delta; delta_hat <= 0.33.
Condition3Result condition3_check(double sigma_i, double delta, double P_i,
                                  double utility_truthful, double utility_max);

// sqrt(pi/8) log((1/2 + delta_hat)/(1/2 - delta_hat)); bounds |mu|/sigma at a
// best response. Requires 0 <= delta_hat < 1/2.
double bounded_ratio_bound(double delta_hat);

struct BerryEsseenGap {
    double utility = 0.0;   // tie-aware win probability
    double normal = 0.0;    // Phi(-mu/sigma)
    double gap = 0.0;       // |utility - normal|
    double bound = 0.0;     // P/sigma^3 (constant 1)
};

// Exact utility vs the plain normal approximation of Pr[sum < 0]; throws if
// the gap exceeds the Berry-Esseen bound or the distribution is degenerate.
BerryEsseenGap berry_esseen_gap(const Report& r, const BeliefModel& belief);

struct Theorem2Gamma {
    double gamma = std::numeric_limits<double>::infinity();
    double C = 0.0;
    bool vacuous = false;  // sqrt(sigma_i) <= 2C: the bound carries no content
};

// gamma = 8(2C + 3D)/(sqrt(sigma_i) - 2C), C = 4 + 5 sqrt(|C3|) + 3|C3| + sqrt(C4).
// Requires C4 >= 0.
Theorem2Gamma gamma_theorem2(double sigma_i, double c3, double c4, double D = 1.0);

}  // namespace fclab
