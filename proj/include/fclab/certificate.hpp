#pragma once

#include <cstddef>
#include <vector>

#include "fclab/belief.hpp"
#include "fclab/edgeworth.hpp"

namespace fclab {

// Worst-case moment aggregates over all report vectors. Events are
// independent, so every sum decomposes per event and each per-event extreme
// is found on a report grid.
struct MomentEnvelope {
    double sigma_min = 0.0;  // min over reports of sigma_i(r)
    double abs3_max = 0.0;   // max over reports of P_i(r)
    double k3_max = 0.0;     // max over reports of kappa_3
    double k4_max = 0.0;     // max over reports of kappa_4
    double c3() const { return k3_max / (sigma_min * sigma_min); }
    double c4() const { return k4_max / (sigma_min * sigma_min); }
};
MomentEnvelope moment_envelope(const BeliefModel& belief, std::size_t grid_steps = 100);

struct BeliefBestResponse {
    Report argmax;
    double utility = 0.0;
    double grid_resolution = 0.0;
};

// Grid search for the utility-maximizing report against a belief model: full
// product grid for m <= 2, coordinate ascent (started from the belief
// marginal and from the all-1/2 report) for larger m.
BeliefBestResponse best_response_belief(const BeliefModel& belief, std::size_t grid_steps = 100);

// Empirical Edgeworth constant: max over events t of
// m * sup_x |G_it(x) - E_it(x)|, with G_it the exact leave-one-out
// convolution (sup taken over both sides of every jump).
double empirical_edgeworth_constant(const Report& r, const BeliefModel& belief);

struct TruthfulnessCertificate {
    double gamma_theorem2 = 0.0;
    bool theorem2_vacuous = false;
    std::vector<double> gamma_per_event;
    Condition3Result condition3;
    double delta_hat = 0.0;
    double D = 1.0;
    double D_hat_empirical = 0.0;
    double sigma_i = 0.0;
    double utility_truthful = 0.0;
    double utility_max = 0.0;
};

// Full pipeline at the truthful report (the belief marginal): moment
// envelope, grid best response, per-event radii, and the closed-form bound.
TruthfulnessCertificate make_certificate(const BeliefModel& belief, double D = 1.0,
                                         double delta = 0.1, std::size_t grid_steps = 100);

}  // namespace fclab
