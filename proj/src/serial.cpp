#include "fclab/serial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fclab/rng.hpp"

namespace fclab {

namespace {

double serial_share_over_outcomes(const std::vector<Report>& reports, std::size_t i,
                                  std::size_t m, double p, double tie_tol) {
    const std::uint64_t total = std::uint64_t{1} << m;
    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t nchunks = (total + kChunk - 1) / kChunk;
    double u = 0.0;
    Outcome y(m);
    for (std::uint64_t c = 0; c < nchunks; ++c) {
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(begin + kChunk, total);
        double acc = 0.0;
        for (std::uint64_t mask = begin; mask < end; ++mask) {
            double prob = 1.0;
            for (std::size_t t = 0; t < m; ++t) {
                y[t] = (mask >> t) & 1;
                prob *= y[t] ? p : 1.0 - p;
            }
            acc += prob * simple_max_share(reports, i, y, tie_tol);
        }
        u += acc;
    }
    return u;
}

}  // namespace

double serial_exact_expected_utility(std::size_t i, const StrategyProfile& profile, std::size_t m,
                                     double p, double tie_tol) {
    if (i >= profile.size())
        throw std::invalid_argument("serial_exact_expected_utility: player out of range");
    if (m > kEnumerationCap)
        throw std::invalid_argument("serial_exact_expected_utility: m exceeds the enumeration cap");
    for (const auto& s : profile) {
        s.validate();
        if (s.m() != m)
            throw std::invalid_argument("serial_exact_expected_utility: dimension mismatch");
    }

    std::vector<std::size_t> sizes, idx;
    for (const auto& s : profile) sizes.push_back(s.support.size());
    idx.assign(sizes.size(), 0);

    double u = 0.0;
    std::vector<Report> reports(profile.size());
    bool done = false;
    while (!done) {
        double w = 1.0;
        for (std::size_t k = 0; k < profile.size(); ++k) {
            reports[k] = profile[k].support[idx[k]].first;
            w *= profile[k].support[idx[k]].second;
        }
        u += w * serial_share_over_outcomes(reports, i, m, p, tie_tol);
        done = true;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (++idx[k] < sizes[k]) {
                done = false;
                break;
            }
            idx[k] = 0;
        }
    }
    return u;
}

UtilityEstimate serial_monte_carlo_utility(std::size_t i, const StrategyProfile& profile,
                                           std::size_t m, double p, std::uint64_t trials,
                                           std::uint64_t seed, double tie_tol) {
    if (trials < 1) throw std::invalid_argument("serial_monte_carlo_utility: trials must be >= 1");
    for (const auto& s : profile) s.validate();

    constexpr std::uint64_t kTrialBlock = 8192;
    const std::uint64_t nblocks = (trials + kTrialBlock - 1) / kTrialBlock;
    double sum = 0.0, sumsq = 0.0;
    std::vector<Report> reports(profile.size());
    Outcome y(m);
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        Rng rng(derive_seed(seed, b));
        const std::uint64_t begin = b * kTrialBlock;
        const std::uint64_t end = std::min(begin + kTrialBlock, trials);
        double s = 0.0, s2 = 0.0;
        for (std::uint64_t k = begin; k < end; ++k) {
            for (std::size_t j = 0; j < profile.size(); ++j) {
                const double u = rng.next_double();
                double c = 0.0;
                std::size_t pick = profile[j].support.size() - 1;
                for (std::size_t a = 0; a < profile[j].support.size(); ++a) {
                    c += profile[j].support[a].second;
                    if (u < c) {
                        pick = a;
                        break;
                    }
                }
                reports[j] = profile[j].support[pick].first;
            }
            for (std::size_t t = 0; t < m; ++t) y[t] = rng.next_bernoulli(p) ? 1 : 0;
            const double x = simple_max_share(reports, i, y, tie_tol);
            s += x;
            s2 += x * x;
        }
        sum += s;
        sumsq += s2;
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    const double var = std::max(0.0, sumsq / n - mean * mean);
    UtilityEstimate est;
    est.mean = mean;
    est.half_width = 1.959963984540054 * std::sqrt(var / n);
    est.trials = trials;
    est.seed = seed;
    return est;
}

}  // namespace fclab
