#include "fclab/edgeworth.hpp"

#include <cmath>
#include <stdexcept>

#include "fclab/utility.hpp"

namespace fclab {

double hermite(int l, double x) {
    if (l < 0 || l > 7) throw std::invalid_argument("hermite: degree must be in [0, 7]");
    double prev = 1.0;  // He_0
    if (l == 0) return prev;
    double cur = x;  // He_1
    for (int k = 1; k < l; ++k) {
        const double next = x * cur - static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) * 0.3989422804014326779399461; }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244008444); }

EdgeworthParams EdgeworthParams::from_moments(const SumMoments& s, std::size_t m, double D) {
    if (!(s.var > 0.0)) throw std::invalid_argument("EdgeworthParams: variance must be positive");
    EdgeworthParams p;
    p.mu = s.mu;
    p.sigma = std::sqrt(s.var);
    p.k3 = s.k3;
    p.k4 = s.k4;
    p.D = D;
    p.m = m;
    return p;
}

double edgeworth_cdf(const EdgeworthParams& params, double x) {
    const double s = params.sigma;
    if (!(s > 0.0)) throw std::invalid_argument("edgeworth_cdf: sigma must be positive");
    const double z = (x - params.mu) / s;
    const double l3 = params.k3 / (s * s * s);
    const double l4 = params.k4 / (s * s * s * s);
    return normal_cdf(z) - normal_pdf(z) * l3 * hermite(2, z) / 6.0 +
           normal_pdf(z) * (l3 * l3 * hermite(5, z) / 72.0 + l4 * hermite(3, z) / 24.0);
}

namespace {

// |E''(z)| for z on the natural (unstandardized) axis.
double curvature(const EdgeworthParams& p, double z) {
    const double s = p.sigma;
    const double w = (z - p.mu) / s;
    const double c3 = p.c3(), c4 = p.c4();
    const double inner = (z - p.mu) - c3 / 6.0 * hermite(4, w) -
                         c3 * c3 / (72.0 * s) * hermite(7, w) - c4 / (24.0 * s) * hermite(5, w);
    return normal_pdf(w) * std::abs(inner) / (s * s * s);
}

}  // namespace

AffineFit affine_fit(const EdgeworthParams& params) {
    const double s = params.sigma;
    if (!(s > 0.0)) throw std::invalid_argument("affine_fit: sigma must be positive");
    const double w0 = -params.mu / s;
    const double c3 = params.c3(), c4 = params.c4();

    AffineFit fit;
    fit.beta = normal_pdf(w0) / s *
               (1.0 + c3 / (6.0 * s) * hermite(3, w0) + c3 * c3 / (72.0 * s * s) * hermite(6, w0) +
                c4 / (24.0 * s * s) * hermite(4, w0));
    fit.alpha = edgeworth_cdf(params, 0.0);

    constexpr std::size_t kGrid = 2001;
    double best = -1.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < kGrid; ++k) {
        const double z = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(kGrid - 1);
        const double v = curvature(params, z);
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    // golden-section refinement around the best grid point
    const double step = 2.0 / static_cast<double>(kGrid - 1);
    double a = std::max(-1.0, -1.0 + step * (static_cast<double>(best_k) - 1.0));
    double b = std::min(1.0, -1.0 + step * (static_cast<double>(best_k) + 1.0));
    const double gr = 0.6180339887498948482;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = curvature(params, x1), f2 = curvature(params, x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = curvature(params, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = curvature(params, x1);
        }
    }
    fit.eps = std::max({best, f1, f2});
    return fit;
}

double gamma_from_affine(const AffineFit& fit) {
    if (!(fit.beta > 0.0))
        throw std::invalid_argument("gamma_from_affine: slope must be positive");
    return std::sqrt(2.0 * fit.eps / fit.beta);
}

LeaveOneOutGamma gamma_leave_one_out(const EdgeworthParams& params) {
    const double s = params.sigma;
    if (!(s > 0.0)) throw std::invalid_argument("gamma_leave_one_out: sigma must be positive");
    const double c3 = params.c3(), c4 = params.c4();
    LeaveOneOutGamma out;
    out.A = 1.0 + 5.0 * std::abs(c3) + 6.0 * c3 * c3 / s + std::abs(c4) / s;
    out.B = 3.0 * std::abs(c3) + 2.0 * c3 * c3 / s + 2.0 * std::abs(c4) / s;
    out.denominator = 1.0 - out.B / s;
    if (!(out.denominator > 0.0))
        throw std::invalid_argument("gamma_leave_one_out: denominator 1 - B/sigma must be positive");
    const double ratio = params.mu / s;
    const double rhs = std::exp(ratio * ratio) *
                       ((std::abs(params.mu) + out.A) / (s * s) +
                        s * params.D / static_cast<double>(params.m)) /
                       out.denominator;
    out.gamma = std::sqrt(2.0 * rhs);
    return out;
}

Condition3Result condition3_check(double sigma_i, double delta, double P_i,
                                  double utility_truthful, double utility_max) {
    Condition3Result r;
    r.sigma_margin = sigma_i - 4.0;
    r.lower_margin = utility_truthful - (0.5 - delta);
    r.upper_margin = (0.5 + delta) - utility_max;
    r.delta_hat = delta + P_i / (sigma_i * sigma_i * sigma_i);
    r.ratio_margin = 0.33 - r.delta_hat;
    r.ok = r.sigma_margin >= 0.0 && r.lower_margin >= 0.0 && r.upper_margin >= 0.0 &&
           r.ratio_margin >= 0.0;
    return r;
}

double bounded_ratio_bound(double delta_hat) {
    if (!(delta_hat >= 0.0 && delta_hat < 0.5))
        throw std::invalid_argument("bounded_ratio_bound: delta_hat must be in [0, 1/2)");
    return std::sqrt(3.14159265358979323846 / 8.0) *
           std::log((0.5 + delta_hat) / (0.5 - delta_hat));
}

BerryEsseenGap berry_esseen_gap(const Report& r, const BeliefModel& belief) {
    const auto events = score_diff_events(r, belief);
    const auto moments = sum_moments(events);
    if (!(moments.var > 0.0))
        throw std::invalid_argument("berry_esseen_gap: degenerate score-difference distribution");
    const double sigma = std::sqrt(moments.var);
    BerryEsseenGap out;
    out.utility = tie_aware_utility(r, belief);
    out.normal = normal_cdf(-moments.mu / sigma);
    out.gap = std::abs(out.utility - out.normal);
    out.bound = moments.abs3 / (sigma * sigma * sigma);
    if (out.gap > out.bound)
        throw std::runtime_error("berry_esseen_gap: gap exceeds the Berry-Esseen bound");
    return out;
}

Theorem2Gamma gamma_theorem2(double sigma_i, double c3, double c4, double D) {
    if (c4 < 0.0) throw std::invalid_argument("gamma_theorem2: C4 must be nonnegative");
    if (!(sigma_i >= 0.0)) throw std::invalid_argument("gamma_theorem2: sigma must be nonnegative");
    Theorem2Gamma out;
    out.C = 4.0 + 5.0 * std::sqrt(std::abs(c3)) + 3.0 * std::abs(c3) + std::sqrt(c4);
    const double denom = std::sqrt(sigma_i) - 2.0 * out.C;
    if (denom <= 0.0) {
        out.vacuous = true;
        return out;
    }
    out.gamma = 8.0 * (2.0 * out.C + 3.0 * D) / denom;
    return out;
}

}  // namespace fclab
