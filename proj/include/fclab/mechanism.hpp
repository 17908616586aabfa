#pragma once

#include <cstdint>
#include <vector>

namespace fclab {

// A report vector: one probability per event.
using Report = std::vector<double>;
// A realized outcome vector: one bit per event.
using Outcome = std::vector<std::uint8_t>;

// Default tie tolerance for floating-point inputs. Scenario code that works
// with exact-rational inputs passes 0.
inline constexpr double kTieTol = 1e-12;

// Quadratic (Brier) score S(r, y) = 1 - (r - y)^2. Throws on r outside [0,1]
// or y outside {0,1}.
double quadratic_score(double r, int y);

// Sum of per-event quadratic scores, accumulated left to right.
double total_score(const Report& r, const Outcome& y);

// Indices of the forecasters with the maximal total score (equivalently,
// minimal Euclidean distance to y).
std::vector<std::size_t> winner_set(const std::vector<Report>& reports, const Outcome& y,
                                    double tie_tol = kTieTol);

// Win probability per forecaster: 1/|winner_set| for members, 0 otherwise.
std::vector<double> simple_max(const std::vector<Report>& reports, const Outcome& y,
                               double tie_tol = kTieTol);

// Win probability of one forecaster; avoids building the full share vector in
// inner loops.
double simple_max_share(const std::vector<Report>& reports, std::size_t i, const Outcome& y,
                        double tie_tol = kTieTol);

}  // namespace fclab
