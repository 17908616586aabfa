#pragma once

#include <cstdint>

#include "fclab/utility.hpp"

namespace fclab {

// Plain single-threaded reference implementations of the parallel kernels.
// They mirror the block structure and summation order of the parallel code
// exactly, so results must be bit-identical for any worker count; tests and
// the benchmark target compare the two.

double serial_exact_expected_utility(std::size_t i, const StrategyProfile& profile, std::size_t m,
                                     double p, double tie_tol = kTieTol);

UtilityEstimate serial_monte_carlo_utility(std::size_t i, const StrategyProfile& profile,
                                           std::size_t m, double p, std::uint64_t trials,
                                           std::uint64_t seed, double tie_tol = kTieTol);

}  // namespace fclab
