#include "fclab/utility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fclab/rng.hpp"

namespace fclab {

void MixedStrategy::validate() const {
    if (support.empty()) throw std::invalid_argument("MixedStrategy: empty support");
    double total = 0.0;
    const std::size_t dim = support.front().first.size();
    for (const auto& [r, w] : support) {
        if (r.size() != dim) throw std::invalid_argument("MixedStrategy: ragged support");
        if (!(w > 0.0)) throw std::invalid_argument("MixedStrategy: weights must be positive");
        for (double v : r)
            if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("MixedStrategy: report outside [0,1]");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("MixedStrategy: weights must sum to 1");
}

MixedStrategy symmetrize(const MixedStrategy& s, std::size_t m) {
    s.validate();
    const auto refs = all_reflections(m);
    MixedStrategy out;
    const double scale = 1.0 / static_cast<double>(refs.size());
    for (const auto& ref : refs)
        for (const auto& [r, w] : s.support) out.support.push_back({ref.apply(r), w * scale});
    return out;
}

Report average_report(const MixedStrategy& s) {
    s.validate();
    Report avg(s.m(), 0.0);
    for (const auto& [r, w] : s.support)
        for (std::size_t t = 0; t < r.size(); ++t) avg[t] += w * r[t];
    return avg;
}

namespace {

// Mixed-radix counter over strategy supports.
struct SupportIter {
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> idx;
    bool done = false;

    explicit SupportIter(const StrategyProfile& profile) {
        for (const auto& s : profile) sizes.push_back(s.support.size());
        idx.assign(sizes.size(), 0);
    }
    void advance() {
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (++idx[k] < sizes[k]) return;
            idx[k] = 0;
        }
        done = true;
    }
};

// Expected share of player i over all outcome vectors, reports fixed.
// Outcomes are chunked; partial sums combine in chunk order so the result is
// identical for any worker count.
double expected_share_over_outcomes(const std::vector<Report>& reports, std::size_t i,
                                    std::size_t m, double p, int workers, double tie_tol) {
    const std::uint64_t total = std::uint64_t{1} << m;
    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t nchunks = (total + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks, 0.0);

#ifdef _OPENMP
    int prev = omp_get_max_threads();
    if (workers > 0) omp_set_num_threads(workers);
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
        const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
        const std::uint64_t end = std::min(begin + kChunk, total);
        Outcome y(m);
        double acc = 0.0;
        for (std::uint64_t mask = begin; mask < end; ++mask) {
            double prob = 1.0;
            for (std::size_t t = 0; t < m; ++t) {
                y[t] = (mask >> t) & 1;
                prob *= y[t] ? p : 1.0 - p;
            }
            acc += prob * simple_max_share(reports, i, y, tie_tol);
        }
        partial[static_cast<std::size_t>(c)] = acc;
    }
#ifdef _OPENMP
    if (workers > 0) omp_set_num_threads(prev);
#endif

    double u = 0.0;
    for (double v : partial) u += v;
    return u;
}

}  // namespace

double exact_expected_utility(std::size_t i, const StrategyProfile& profile, std::size_t m,
                              double p, int workers, double tie_tol) {
    if (i >= profile.size()) throw std::invalid_argument("exact_expected_utility: player out of range");
    if (m > kEnumerationCap)
        throw std::invalid_argument(
            "exact_expected_utility: m exceeds the enumeration cap; use monte_carlo_utility");
    for (const auto& s : profile) {
        s.validate();
        if (s.m() != m) throw std::invalid_argument("exact_expected_utility: dimension mismatch");
    }

    double u = 0.0;
    std::vector<Report> reports(profile.size());
    for (SupportIter it(profile); !it.done; it.advance()) {
        double w = 1.0;
        for (std::size_t k = 0; k < profile.size(); ++k) {
            reports[k] = profile[k].support[it.idx[k]].first;
            w *= profile[k].support[it.idx[k]].second;
        }
        u += w * expected_share_over_outcomes(reports, i, m, p, workers, tie_tol);
    }
    return u;
}

double exact_expected_utility_direct(std::size_t i, const StrategyProfile& canonical_profile,
                                     std::size_t informed_index, std::size_t m, double p,
                                     double tie_tol) {
    if (m > kEnumerationCap)
        throw std::invalid_argument("exact_expected_utility_direct: m exceeds the enumeration cap");
    const auto refs = all_reflections(m);
    const double theta_w = 1.0 / static_cast<double>(refs.size());
    double u = 0.0;
    for (const auto& ref : refs) {
        // theta_t = 1-p on flipped coordinates; the informed player's strategy
        // follows the reflection, everyone else plays their base strategy.
        StrategyProfile profile = canonical_profile;
        for (auto& [r, w] : profile[informed_index].support) r = ref.apply(r);
        std::vector<Report> reports(profile.size());
        for (SupportIter it(profile); !it.done; it.advance()) {
            double w = theta_w;
            for (std::size_t k = 0; k < profile.size(); ++k) {
                reports[k] = profile[k].support[it.idx[k]].first;
                w *= profile[k].support[it.idx[k]].second;
            }
            // enumerate y under Bernoulli(theta)
            Outcome y(m);
            const std::uint64_t total = std::uint64_t{1} << m;
            double acc = 0.0;
            for (std::uint64_t mask = 0; mask < total; ++mask) {
                double prob = 1.0;
                for (std::size_t t = 0; t < m; ++t) {
                    y[t] = (mask >> t) & 1;
                    const double th = ref.flip[t] ? 1.0 - p : p;
                    prob *= y[t] ? th : 1.0 - th;
                }
                acc += prob * simple_max_share(reports, i, y, tie_tol);
            }
            u += w * acc;
        }
    }
    return u;
}

double tie_aware_utility(const Report& r, const BeliefModel& belief, const ConvolveOptions& opts) {
    const auto events = score_diff_events(r, belief);
    const auto total = convolve(events, opts);
    // win iff the opponent-minus-self cumulative difference is negative
    double u = 0.0;
    for (const auto& a : total.atoms()) {
        if (a.value < -ScoreDiffDistribution::kMergeTol)
            u += a.weight;
        else if (a.value <= ScoreDiffDistribution::kMergeTol)
            u += 0.5 * a.weight;
    }
    return u;
}

double expected_utility(const MixedStrategy& s, const BeliefModel& belief,
                        const ConvolveOptions& opts) {
    s.validate();
    double u = 0.0;
    for (const auto& [r, w] : s.support) u += w * tie_aware_utility(r, belief, opts);
    return u;
}

namespace {

constexpr std::uint64_t kTrialBlock = 8192;

std::size_t draw_support(const MixedStrategy& s, Rng& rng) {
    const double u = rng.next_double();
    double c = 0.0;
    for (std::size_t k = 0; k < s.support.size(); ++k) {
        c += s.support[k].second;
        if (u < c) return k;
    }
    return s.support.size() - 1;
}

template <typename TrialFn>
UtilityEstimate run_blocks(std::uint64_t trials, std::uint64_t seed, int workers, TrialFn&& trial) {
    if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
    const std::uint64_t nblocks = (trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<double> sum(nblocks, 0.0), sumsq(nblocks, 0.0);

#ifdef _OPENMP
    int prev = omp_get_max_threads();
    if (workers > 0) omp_set_num_threads(workers);
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
        const std::uint64_t begin = static_cast<std::uint64_t>(b) * kTrialBlock;
        const std::uint64_t end = std::min(begin + kTrialBlock, trials);
        double s = 0.0, s2 = 0.0;
        for (std::uint64_t k = begin; k < end; ++k) {
            const double x = trial(rng);
            s += x;
            s2 += x * x;
        }
        sum[static_cast<std::size_t>(b)] = s;
        sumsq[static_cast<std::size_t>(b)] = s2;
    }
#ifdef _OPENMP
    if (workers > 0) omp_set_num_threads(prev);
#endif

    double s = 0.0, s2 = 0.0;
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        s += sum[b];
        s2 += sumsq[b];
    }
    const double n = static_cast<double>(trials);
    const double mean = s / n;
    const double var = std::max(0.0, s2 / n - mean * mean);
    UtilityEstimate est;
    est.mean = mean;
    est.half_width = 1.959963984540054 * std::sqrt(var / n);
    est.trials = trials;
    est.seed = seed;
    return est;
}

}  // namespace

UtilityEstimate monte_carlo_utility(std::size_t i, const StrategyProfile& profile, std::size_t m,
                                    double p, std::uint64_t trials, std::uint64_t seed,
                                    int workers, double tie_tol) {
    for (const auto& s : profile) s.validate();
    return run_blocks(trials, seed, workers, [&](Rng& rng) {
        std::vector<Report> reports(profile.size());
        for (std::size_t k = 0; k < profile.size(); ++k)
            reports[k] = profile[k].support[draw_support(profile[k], rng)].first;
        Outcome y(m);
        for (std::size_t t = 0; t < m; ++t) y[t] = rng.next_bernoulli(p) ? 1 : 0;
        return simple_max_share(reports, i, y, tie_tol);
    });
}

UtilityEstimate monte_carlo_utility(const MixedStrategy& s, const BeliefModel& belief,
                                    std::uint64_t trials, std::uint64_t seed, int workers,
                                    double tie_tol) {
    s.validate();
    belief.validate();
    const std::size_t m = belief.m();
    return run_blocks(trials, seed, workers, [&](Rng& rng) {
        const Report& ri = s.support[draw_support(s, rng)].first;
        Report rj(m);
        Outcome y(m);
        for (std::size_t t = 0; t < m; ++t) {
            const auto& atoms = belief.events[t].atoms;
            const double u = rng.next_double();
            double c = 0.0;
            std::size_t pick = atoms.size() - 1;
            for (std::size_t k = 0; k < atoms.size(); ++k) {
                c += atoms[k].w;
                if (u < c) {
                    pick = k;
                    break;
                }
            }
            rj[t] = atoms[pick].r;
            y[t] = atoms[pick].y;
        }
        return simple_max_share({ri, rj}, 0, y, tie_tol);
    });
}

}  // namespace fclab
