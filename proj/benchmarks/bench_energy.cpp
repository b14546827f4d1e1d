#include <benchmark/benchmark.h>

#include <vector>

#include "bswet/allocator.hpp"
#include "bswet/energy.hpp"
#include "bswet/specfun.hpp"

namespace {

bswet::Scenario two_er_scenario() {
    bswet::Scenario sc;
    sc.tx_antennas = 4;
    sc.frame_symbols = 200.0;
    sc.average_power_watts = 1.0;
    sc.noise_power_watts = 1e-12;
    sc.harvest_efficiency = 0.8;
    sc.ers.push_back({4.0, 0.0, {1.0, 0.0}, 0.3});
    sc.ers.push_back({6.0, 0.0, {1.0, 0.0}, 0.7});
    sc.apply_defaults();
    return sc;
}

void BM_ExpintE1(benchmark::State& state) {
    double t = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bswet::specfun::expint_e1(t));
        t = t < 40.0 ? t * 1.37 : 1e-6;
    }
}
BENCHMARK(BM_ExpintE1);

void BM_EnergyExact(benchmark::State& state) {
    const auto sc = two_er_scenario();
    const std::vector<double> xi{0.5, 0.5};
    double q = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bswet::energy_exact(sc, q, xi));
        q = q < 150.0 ? q + 0.37 : 1.0;
    }
}
BENCHMARK(BM_EnergyExact);

void BM_Waterfill(benchmark::State& state) {
    const auto sc = two_er_scenario();
    for (auto _ : state) benchmark::DoNotOptimize(bswet::waterfill(sc, 7.45));
}
BENCHMARK(BM_Waterfill);

void BM_SolvePfe(benchmark::State& state) {
    const auto sc = two_er_scenario();
    for (auto _ : state) benchmark::DoNotOptimize(bswet::solve_pfe(sc));
}
BENCHMARK(BM_SolvePfe);

void BM_SolveWse(benchmark::State& state) {
    const auto sc = two_er_scenario();
    for (auto _ : state) benchmark::DoNotOptimize(bswet::solve_wse(sc));
}
BENCHMARK(BM_SolveWse);

}  // namespace

BENCHMARK_MAIN();
