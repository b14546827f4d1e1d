#include <benchmark/benchmark.h>

#include "bswet/beamform_mc.hpp"

namespace {

bswet::Scenario scenario(int k_count, int m) {
    bswet::Scenario sc;
    sc.tx_antennas = m;
    sc.frame_symbols = 200.0;
    sc.average_power_watts = 1.0;
    sc.noise_power_watts = 1e-12;
    sc.harvest_efficiency = 0.8;
    for (int k = 0; k < k_count; ++k)
        sc.ers.push_back({4.0 + 2.0 * k, 0.0, {1.0, 0.0}, -1.0});
    sc.apply_defaults();
    return sc;
}

void BM_SimulateEnergy(benchmark::State& state) {
    const int k_count = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    const auto sc = scenario(k_count, m);
    const double q = 9.2;
    bswet::McConfig mc;
    mc.runs = 10000;
    mc.seed = 1;
    mc.threads = 1;
    mc.ce_plan = bswet::CePlan::for_training_energy(sc, q, 1);
    const bswet::Allocation alloc{q, std::vector<double>(static_cast<std::size_t>(k_count),
                                                         1.0 / k_count)};
    for (auto _ : state) benchmark::DoNotOptimize(bswet::simulate_energy(sc, alloc, mc));
    state.SetItemsProcessed(state.iterations() * mc.runs);
}
BENCHMARK(BM_SimulateEnergy)->Args({1, 4})->Args({2, 4})->Args({2, 8})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
