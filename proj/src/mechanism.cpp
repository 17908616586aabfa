#include "fclab/mechanism.hpp"

#include <stdexcept>

namespace fclab {

double quadratic_score(double r, int y) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("quadratic_score: report outside [0,1]");
    if (y != 0 && y != 1) throw std::invalid_argument("quadratic_score: outcome must be 0 or 1");
    const double d = r - static_cast<double>(y);
    return 1.0 - d * d;
}

double total_score(const Report& r, const Outcome& y) {
    if (r.size() != y.size()) throw std::invalid_argument("total_score: dimension mismatch");
    double s = 0.0;
    for (std::size_t t = 0; t < r.size(); ++t) s += quadratic_score(r[t], y[t]);
    return s;
}

std::vector<std::size_t> winner_set(const std::vector<Report>& reports, const Outcome& y,
                                    double tie_tol) {
    if (reports.empty()) throw std::invalid_argument("winner_set: no reports");
    std::vector<double> scores(reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) scores[i] = total_score(reports[i], y);
    double best = scores[0];
    for (double s : scores)
        if (s > best) best = s;
    std::vector<std::size_t> winners;
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (scores[i] >= best - tie_tol) winners.push_back(i);
    return winners;
}

std::vector<double> simple_max(const std::vector<Report>& reports, const Outcome& y,
                               double tie_tol) {
    const auto winners = winner_set(reports, y, tie_tol);
    std::vector<double> share(reports.size(), 0.0);
    const double w = 1.0 / static_cast<double>(winners.size());
    for (std::size_t i : winners) share[i] = w;
    return share;
}

double simple_max_share(const std::vector<Report>& reports, std::size_t i, const Outcome& y,
                        double tie_tol) {
    if (reports.empty()) throw std::invalid_argument("simple_max_share: no reports");
    std::vector<double> scores(reports.size());
    for (std::size_t k = 0; k < reports.size(); ++k) scores[k] = total_score(reports[k], y);
    double best = scores[0];
    for (double s : scores)
        if (s > best) best = s;
    if (scores[i] < best - tie_tol) return 0.0;
    std::size_t winners = 0;
    for (double s : scores)
        if (s >= best - tie_tol) ++winners;
    return 1.0 / static_cast<double>(winners);
}

}  // namespace fclab
