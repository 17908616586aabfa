#include "fclab/hedging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fclab {

namespace {

double p_bound(std::size_t m) {
    const double s = 2.0 / std::sqrt(static_cast<double>(m));
    return 0.5 - 2.0 * std::sqrt(s * (1.0 - s));
}

double eps_bound(std::size_t m, double p) {
    const double ps = (0.5 + p) / 2.0;
    return 0.5 - std::sqrt(ps * (1.0 - ps)) - 2.0 / std::sqrt(static_cast<double>(m));
}

}  // namespace

Condition1Result condition1_check(std::size_t m, double p, double eps) {
    if (m < 1) throw std::invalid_argument("condition1_check: m must be >= 1");
    Condition1Result r;
    r.m_margin = static_cast<double>(m) - 21.0;
    r.p_bound = p_bound(m);
    r.p_margin = r.p_bound - p;
    r.eps_bound = eps_bound(m, p);
    r.eps_margin = r.eps_bound - eps;
    r.ok = r.m_margin >= 0.0 && r.p_margin > 0.0 && r.eps_margin > 0.0 && p > 0.0 && eps > 0.0;
    return r;
}

std::size_t condition1_smallest_feasible_m() {
    for (std::size_t m = 21;; ++m)
        if (p_bound(m) > 0.0) return m;
}

std::vector<HedgingParams> condition1_feasible_triples(std::size_t count) {
    std::vector<HedgingParams> out;
    for (std::size_t m = condition1_smallest_feasible_m(); out.size() < count; m += 100) {
        HedgingParams t;
        t.m = m;
        t.p = 0.5 * p_bound(m);
        t.eps = 0.5 * eps_bound(m, t.p);
        if (condition1_check(t.m, t.p, t.eps).ok) out.push_back(t);
    }
    return out;
}

double weight_class_distance_sq(std::size_t m, double q, std::size_t w) {
    if (w > m) throw std::invalid_argument("weight_class_distance_sq: w > m");
    return static_cast<double>(m) * q * q + static_cast<double>(w) * (1.0 - 2.0 * q);
}

namespace {

double lemma1_margin_raw(std::size_t m, double p, double eps) {
    const double ps = (0.5 + p) / 2.0;
    const double root_m = std::sqrt(static_cast<double>(m));
    const auto w_max = static_cast<std::size_t>(std::floor(ps * static_cast<double>(m)));
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t w = 0; w <= w_max; ++w) {
        const double d_star = std::sqrt(weight_class_distance_sq(m, ps, w));
        margin = std::min(margin, root_m * (0.5 - eps) - (d_star + 2.0));
    }
    return margin;
}

double lemma2_margin_raw(std::size_t m, double p, double eps) {
    const double ps = (0.5 + p) / 2.0;
    const double root_m = std::sqrt(static_cast<double>(m));
    const auto w_min = static_cast<std::size_t>(std::ceil(ps * static_cast<double>(m)));
    double slack = std::numeric_limits<double>::infinity();
    double prev_f = -std::numeric_limits<double>::infinity();
    for (std::size_t w = w_min; w <= m; ++w) {
        const double d_star = std::sqrt(weight_class_distance_sq(m, ps, w));
        const double d_p = std::sqrt(weight_class_distance_sq(m, p, w));
        const double f = d_p - d_star;
        if (f <= prev_f) throw std::logic_error("lemma2_margin: d_p - d* not increasing in w");
        prev_f = f;
        slack = std::min(slack, (d_p - eps * root_m) - d_star - 2.0);
    }
    return slack;
}

}  // namespace

double lemma1_margin(std::size_t m, double p, double eps) {
    if (!condition1_check(m, p, eps).ok)
        throw std::invalid_argument("lemma1_margin: parameters fail the feasibility condition");
    return lemma1_margin_raw(m, p, eps);
}

double lemma2_margin(std::size_t m, double p, double eps) {
    if (!condition1_check(m, p, eps).ok)
        throw std::invalid_argument("lemma2_margin: parameters fail the feasibility condition");
    return lemma2_margin_raw(m, p, eps);
}

namespace {

// Uniform point in the l2 ball of the given absolute radius around the
// origin: Gaussian direction, U^{1/m} radial profile.
void ball_offset(std::size_t m, double abs_radius, Rng& rng, std::vector<double>& out) {
    out.resize(m);
    double norm_sq = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        out[t] = rng.next_normal();
        norm_sq += out[t] * out[t];
    }
    const double norm = std::sqrt(norm_sq);
    const double r = abs_radius * std::pow(rng.next_double(), 1.0 / static_cast<double>(m));
    const double scale = norm > 0.0 ? r / norm : 0.0;
    for (double& v : out) v *= scale;
}

bool sample_ball_into(const Report& center, double radius, Rng& rng, Report& out,
                      std::vector<double>& scratch) {
    const std::size_t m = center.size();
    ball_offset(m, radius * std::sqrt(static_cast<double>(m)), rng, scratch);
    out.resize(m);
    for (std::size_t t = 0; t < m; ++t) {
        out[t] = center[t] + scratch[t];
        if (out[t] < 0.0 || out[t] > 1.0) return false;
    }
    return true;
}

}  // namespace

Report sample_ball_report(const Report& center, double radius, std::uint64_t seed) {
    if (radius < 0.0) throw std::invalid_argument("sample_ball_report: radius must be >= 0");
    for (double c : center)
        if (!(c >= 0.0 && c <= 1.0))
            throw std::invalid_argument("sample_ball_report: center outside the unit cube");
    Rng rng(seed);
    Report out;
    std::vector<double> scratch;
    while (!sample_ball_into(center, radius, rng, out, scratch)) {
    }
    return out;
}

namespace {

// log of the Bernoulli(p)^m weight-class probability C(m,w) p^w (1-p)^(m-w)
double log_weight_prob(std::size_t m, double p, std::size_t w) {
    const double md = static_cast<double>(m), wd = static_cast<double>(w);
    return std::lgamma(md + 1.0) - std::lgamma(wd + 1.0) - std::lgamma(md - wd + 1.0) +
           wd * std::log(p) + (md - wd) * std::log1p(-p);
}

// Hamming-weight-w outcome vector, uniform, via partial Fisher-Yates.
void sample_weight_outcome(std::size_t m, std::size_t w, Rng& rng, Outcome& y,
                           std::vector<std::uint32_t>& perm) {
    y.assign(m, 0);
    if (perm.size() != m) {
        perm.resize(m);
        std::iota(perm.begin(), perm.end(), 0u);
    }
    for (std::size_t k = 0; k < w; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.next_below(m - k));
        std::swap(perm[k], perm[j]);
        y[perm[k]] = 1;
    }
}

double dist_sq(const Report& r, const Outcome& y) {
    double s = 0.0;
    for (std::size_t t = 0; t < r.size(); ++t) {
        const double d = r[t] - static_cast<double>(y[t]);
        s += d * d;
    }
    return s;
}

// Share of the candidate (its squared distance given) against the opponents'
// squared distances.
double share_from_dists(double cand_sq, const std::vector<double>& opp_sq) {
    double best = cand_sq;
    for (double d : opp_sq) best = std::min(best, d);
    if (cand_sq > best + kTieTol) return 0.0;
    std::size_t winners = 1;
    for (double d : opp_sq)
        if (d <= best + kTieTol) ++winners;
    return 1.0 / static_cast<double>(winners);
}

}  // namespace

DominanceReport dominance_check(const HedgingParams& params, std::size_t n, std::uint64_t trials,
                                std::uint64_t seed, const DominanceOptions& opts) {
    if (n < 2) throw std::invalid_argument("dominance_check: need n >= 2 forecasters");
    if (trials < 1) throw std::invalid_argument("dominance_check: trials must be >= 1");
    const std::size_t m = params.m;
    const double p = params.p;
    const double eps = params.eps;

    DominanceReport rep;
    rep.seed = seed;
    rep.condition1 = condition1_check(m, p, eps);
    if (!rep.condition1.ok && !opts.skip_condition1)
        throw std::invalid_argument("dominance_check: parameters fail the feasibility condition");
    rep.lemma1 = lemma1_margin_raw(m, p, eps);
    rep.lemma2 = lemma2_margin_raw(m, p, eps);

    const std::size_t strata = m + 1;
    const std::uint64_t base = trials / strata;
    const std::uint64_t extra = trials % strata;  // first strata get one more

    const Report belief(m, p);
    const Report center(m, 0.5);
    const double ps = params.p_star();

    std::vector<double> stratum_mean(strata, 0.0), stratum_var(strata, 0.0), log_pi(strata);
    std::vector<std::uint64_t> stratum_k(strata, 0), stratum_strict(strata, 0),
        stratum_viol(strata, 0), stratum_dom(strata, 0);
    std::vector<std::string> stratum_witness(strata);

#ifdef _OPENMP
    int prev = omp_get_max_threads();
    if (opts.workers > 0) omp_set_num_threads(opts.workers);
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t wi = 0; wi < static_cast<std::int64_t>(strata); ++wi) {
        const auto w = static_cast<std::size_t>(wi);
        const std::uint64_t k_w = base + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
        log_pi[w] = log_weight_prob(m, p, w);
        stratum_k[w] = k_w;
        if (k_w == 0) continue;

        Rng rng(derive_seed(seed, w));
        Report r_i;
        std::vector<Report> opp(n - 1);
        std::vector<double> scratch, opp_sq(n - 1);
        std::vector<std::uint32_t> perm;
        Outcome y;

        double s = 0.0, s2 = 0.0;
        for (std::uint64_t k = 0; k < k_w; ++k) {
            while (!sample_ball_into(belief, eps, rng, r_i, scratch)) {
            }
            for (auto& rj : opp)
                while (!sample_ball_into(center, eps, rng, rj, scratch)) {
                }
            sample_weight_outcome(m, w, rng, y, perm);
            for (std::size_t j = 0; j + 1 < n; ++j) opp_sq[j] = dist_sq(opp[j], y);
            const double star_sq =
                static_cast<double>(m) * ps * ps + static_cast<double>(w) * (1.0 - 2.0 * ps);
            const double diff =
                share_from_dists(star_sq, opp_sq) - share_from_dists(dist_sq(r_i, y), opp_sq);
            s += diff;
            s2 += diff * diff;
            if (diff > 0.0) ++stratum_strict[w];
            if (diff >= 0.0) ++stratum_dom[w];
            if (diff < 0.0) {
                ++stratum_viol[w];
                if (stratum_witness[w].empty()) {
                    std::ostringstream os;
                    os << "weight=" << w << " sample=" << k << " gain=" << diff;
                    stratum_witness[w] = os.str();
                }
            }
        }
        const double kd = static_cast<double>(k_w);
        stratum_mean[w] = s / kd;
        stratum_var[w] = std::max(0.0, s2 / kd - stratum_mean[w] * stratum_mean[w]);
    }
#ifdef _OPENMP
    if (opts.workers > 0) omp_set_num_threads(prev);
#endif

    // Scale by the largest weight among strata with nonzero sampled effect so
    // the variance term stays representable; the raw importance weights fall
    // far below the double range squared.
    double log_scale = -std::numeric_limits<double>::infinity();
    for (std::size_t w = 0; w < strata; ++w)
        if (stratum_k[w] > 0 && (stratum_mean[w] != 0.0 || stratum_var[w] > 0.0))
            log_scale = std::max(log_scale, log_pi[w]);

    double gain = 0.0, var = 0.0, dom_prob = 0.0;
    for (std::size_t w = 0; w < strata; ++w) {
        if (stratum_k[w] == 0) continue;
        dom_prob += std::exp(log_pi[w]) * static_cast<double>(stratum_dom[w]) /
                    static_cast<double>(stratum_k[w]);
        if (std::isfinite(log_scale) && (stratum_mean[w] != 0.0 || stratum_var[w] > 0.0)) {
            const double rel = std::exp(log_pi[w] - log_scale);
            gain += rel * stratum_mean[w];
            var += rel * rel * stratum_var[w] / static_cast<double>(stratum_k[w]);
        }
        rep.samples += stratum_k[w];
        rep.strict_count += stratum_strict[w];
        rep.violations += stratum_viol[w];
        if (!rep.witness && !stratum_witness[w].empty()) rep.witness = stratum_witness[w];
    }
    const double scale = std::isfinite(log_scale) ? std::exp(log_scale) : 0.0;
    rep.gain = scale * gain;
    rep.ci_half_width = 1.959963984540054 * scale * std::sqrt(var);
    rep.dominance_frequency = dom_prob;
    if (rep.violations > 0 && !opts.skip_condition1)
        throw std::runtime_error("dominance_check: weak dominance violated, first witness: " +
                                 *rep.witness);
    return rep;
}

}  // namespace fclab
