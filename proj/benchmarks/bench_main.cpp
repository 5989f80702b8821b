#include <benchmark/benchmark.h>

#include "manetsim/config.hpp"
#include "manetsim/event.hpp"
#include "manetsim/simulation.hpp"

namespace {

using namespace manetsim;

void BM_EventQueueChurn(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  RandomStream rng(42, StreamId::Traffic);
  std::vector<double> times;
  times.reserve(n);
  for (std::size_t i = 0; i < n; ++i) times.push_back(rng.uniform(0.0, 600.0));
  for (auto _ : state) {
    EventQueue queue;
    for (double t : times) queue.push(t, SimulationEndPayload{});
    while (auto e = queue.pop()) benchmark::DoNotOptimize(e->time);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_EventQueueChurn)->Arg(1 << 10)->Arg(1 << 14);

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.node_count = 20;
  cfg.arena_width = 400;
  cfg.arena_height = 400;
  cfg.duration = 30;
  return cfg;
}

void BM_NeighborScan(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.duration = 1;
  Simulation sim(cfg, 1);
  NodeId id = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim.neighbors(id, 0.0));
    id = (id + 1) % cfg.node_count;
  }
}
BENCHMARK(BM_NeighborScan);

void BM_SmallRun(benchmark::State& state) {
  const ScenarioConfig cfg = small_config();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    Simulation sim(cfg, seed++);
    benchmark::DoNotOptimize(sim.run());
  }
}
BENCHMARK(BM_SmallRun)->Unit(benchmark::kMillisecond);

void BM_AttackedRun(benchmark::State& state) {
  ScenarioConfig cfg = small_config();
  cfg.attackers.count = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    Simulation sim(cfg, seed++);
    benchmark::DoNotOptimize(sim.run());
  }
}
BENCHMARK(BM_AttackedRun)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
