#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "slicerl/common/rng.hpp"
#include "slicerl/sim/scheduler.hpp"

using namespace slicerl;

namespace {

std::vector<sim::PfCandidate> make_candidates(int n, Rng& rng) {
  std::uniform_real_distribution<double> rate(1e4, 1e6), ewma(1e3, 1e6), load(0.0, 5e5);
  std::vector<sim::PfCandidate> cands(static_cast<size_t>(n));
  for (auto& c : cands) {
    c.link_rate = rate(rng);
    c.ewma = ewma(rng);
    c.backlog_bits = load(rng);
  }
  return cands;
}

}  // namespace

static void BM_PfSchedule(benchmark::State& state) {
  Rng rng = make_rng(1);
  auto cands = make_candidates(static_cast<int>(state.range(0)), rng);
  int budget = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto out = sim::pf_schedule(cands, budget);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_PfSchedule)->Args({8, 8})->Args({20, 25})->Args({64, 25});

static void BM_SoftSlicingRedistribute(benchmark::State& state) {
  Rng rng = make_rng(2);
  auto cands = make_candidates(static_cast<int>(state.range(0)), rng);
  int budget = static_cast<int>(state.range(1));
  std::vector<double> planned(cands.size(), 0.0);
  sim::pf_assign(cands, budget / 2, planned);
  for (auto _ : state) {
    std::vector<double> scratch = planned;
    auto out = sim::soft_slicing_redistribute(cands, budget - budget / 2, scratch);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_SoftSlicingRedistribute)->Args({20, 25})->Args({64, 25});
