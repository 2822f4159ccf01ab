#include <benchmark/benchmark.h>

#include <vector>

#include "qabsorb/dynamics.hpp"
#include "qabsorb/oracle.hpp"
#include "qabsorb/wavepacket.hpp"

using namespace qabsorb;

namespace {

constexpr double kRate = 7.2e7;
constexpr double kT1 = 10.0 / kRate;

void BM_Moments(benchmark::State& state) {
    const auto w = make_exponential(kRate);
    const auto lambda = generator_coupling(w);
    const auto gamma = truncated_coupling(w, 0.0, 0.01 * kT1);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_moments(lambda, gamma, kT1));
}
BENCHMARK(BM_Moments)->Unit(benchmark::kMillisecond);

void BM_Amplitudes(benchmark::State& state) {
    const auto w = make_exponential(kRate);
    const auto lambda = generator_coupling(w);
    const auto gamma = truncated_coupling(w, 0.0, 0.01 * kT1);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_amplitudes(lambda, gamma, 0.0, kT1));
}
BENCHMARK(BM_Amplitudes)->Unit(benchmark::kMillisecond);

void BM_ExactAbsorption(benchmark::State& state) {
    const auto w = make_exponential(kRate);
    for (auto _ : state) benchmark::DoNotOptimize(exact_absorption_run(w, 0.0, kT1));
}
BENCHMARK(BM_ExactAbsorption)->Unit(benchmark::kMillisecond);

void BM_MasterEquation(benchmark::State& state) {
    const auto w = make_exponential(kRate);
    const auto g = generator_absorber_cascade(generator_coupling(w),
                                              truncated_coupling(w, 0.0, 0.01 * kT1));
    const auto rho0 = DensityMatrix::from_amplitudes({});
    for (auto _ : state) benchmark::DoNotOptimize(master_equation_evolve(g, rho0, 0.0, kT1));
}
BENCHMARK(BM_MasterEquation)->Unit(benchmark::kMillisecond);

void BM_TabulatedHead(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> grid(n);
    std::vector<std::complex<double>> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = 10.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        values[i] = std::exp(-0.5 * grid[i]);
    }
    const auto w = make_tabulated(grid, values);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(w.head_energy(t));
        t = t > 9.9 ? 0.0 : t + 0.0137;
    }
}
BENCHMARK(BM_TabulatedHead)->Arg(1000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
