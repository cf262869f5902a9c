#include <benchmark/benchmark.h>

#include <vector>

#include "slicerl/sim/simulator.hpp"

using namespace slicerl;

static void BM_SimulatorStep(benchmark::State& state) {
  sim::SimConfig cfg;
  if (state.range(0) == 0) {  // desk-scale world used by the acceptance studies
    cfg.ues_per_slice = {4, 8, 12};
    cfg.subframes_per_interval = 20;
  }
  sim::Simulator sim(cfg, 7);
  std::vector<int> alloc = {cfg.num_rbgs / 3, cfg.num_rbgs / 3,
                            cfg.num_rbgs - 2 * (cfg.num_rbgs / 3)};
  for (auto _ : state) {
    auto metrics = sim.step(alloc);
    benchmark::DoNotOptimize(metrics);
  }
}
BENCHMARK(BM_SimulatorStep)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
