#include <chrono>
#include <cstdio>

#include "fclab/equilibrium.hpp"
#include "fclab/serial.hpp"
#include "fclab/utility.hpp"

using namespace fclab;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename Fn>
double time_ms(Fn&& fn) {
    const double t0 = now_ms();
    fn();
    return now_ms() - t0;
}

}  // namespace

int main() {
    const std::size_t m = 18;
    const double p = 0.3;
    StrategyProfile profile = {
        MixedStrategy::pure(Report(m, p)),
        MixedStrategy{{{Report(m, 0.0), 0.5}, {Report(m, 1.0), 0.5}}},
    };

    double serial_u = 0.0, parallel_u = 0.0;
    const double t_serial =
        time_ms([&] { serial_u = serial_exact_expected_utility(0, profile, m, p); });
    const double t_parallel =
        time_ms([&] { parallel_u = exact_expected_utility(0, profile, m, p); });
    std::printf("exact enumeration (m=%zu, 2^%zu outcomes)\n", m, m);
    std::printf("  serial    %10.1f ms  u=%.17g\n", t_serial, serial_u);
    std::printf("  parallel  %10.1f ms  u=%.17g\n", t_parallel, parallel_u);
    std::printf("  speedup   %10.2fx  bit-identical: %s\n", t_serial / t_parallel,
                serial_u == parallel_u ? "yes" : "NO");

    const std::uint64_t trials = 2'000'000;
    UtilityEstimate se{}, pe{};
    const double mc_serial =
        time_ms([&] { se = serial_monte_carlo_utility(0, profile, m, p, trials, 7); });
    const double mc_parallel =
        time_ms([&] { pe = monte_carlo_utility(0, profile, m, p, trials, 7); });
    std::printf("monte carlo (m=%zu, %llu trials)\n", m,
                static_cast<unsigned long long>(trials));
    std::printf("  serial    %10.1f ms  u=%.17g\n", mc_serial, se.mean);
    std::printf("  parallel  %10.1f ms  u=%.17g\n", mc_parallel, pe.mean);
    std::printf("  speedup   %10.2fx  bit-identical: %s\n", mc_serial / mc_parallel,
                se.mean == pe.mean ? "yes" : "NO");
    return (serial_u == parallel_u && se.mean == pe.mean) ? 0 : 1;
}
