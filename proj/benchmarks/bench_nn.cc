#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "slicerl/common/rng.hpp"
#include "slicerl/nn/mlp.hpp"

using namespace slicerl;

namespace {

nn::MlpSpec critic_spec(int width) { return {{18, width, width, 1}}; }

}  // namespace

static void BM_ForwardBatch(benchmark::State& state) {
  int width = static_cast<int>(state.range(0));
  int batch = static_cast<int>(state.range(1));
  nn::MlpSpec spec = critic_spec(width);
  nn::Layout layout = nn::Layout::from_spec(spec);
  Rng rng = make_rng(3);
  nn::ParamVector params = nn::init_params(spec, rng);
  std::normal_distribution<double> gauss;
  std::vector<double> input(static_cast<size_t>(batch) * spec.input_size());
  for (double& v : input) v = gauss(rng);
  nn::Workspace ws;
  for (auto _ : state) {
    nn::forward_batch(params, spec, layout, input, batch, ws);
    benchmark::DoNotOptimize(ws.acts.back());
  }
}
BENCHMARK(BM_ForwardBatch)->Args({32, 64})->Args({256, 256});

static void BM_BackwardBatch(benchmark::State& state) {
  int width = static_cast<int>(state.range(0));
  int batch = static_cast<int>(state.range(1));
  nn::MlpSpec spec = critic_spec(width);
  nn::Layout layout = nn::Layout::from_spec(spec);
  Rng rng = make_rng(4);
  nn::ParamVector params = nn::init_params(spec, rng);
  std::normal_distribution<double> gauss;
  std::vector<double> input(static_cast<size_t>(batch) * spec.input_size());
  for (double& v : input) v = gauss(rng);
  std::vector<double> upstream(static_cast<size_t>(batch) * spec.output_size(), 1.0);
  nn::Workspace ws;
  nn::ParamVector grad(params.size());
  for (auto _ : state) {
    nn::forward_batch(params, spec, layout, input, batch, ws);
    std::fill(grad.begin(), grad.end(), 0.0);
    nn::backward_batch(params, spec, layout, upstream, ws, grad);
    benchmark::DoNotOptimize(grad);
  }
}
BENCHMARK(BM_BackwardBatch)->Args({32, 64})->Args({256, 256});
