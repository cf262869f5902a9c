#pragma once

#include <span>
#include <vector>

#include "slicerl/common/rng.hpp"

namespace slicerl::nn {

// Fixed-topology MLP: affine layers with relu between them, identity at the
// output. layer_sizes runs input first, output last.
struct MlpSpec {
  std::vector<int> layer_sizes;

  void validate() const;  // throws std::invalid_argument
  int input_size() const { return layer_sizes.front(); }
  int output_size() const { return layer_sizes.back(); }
  int num_affine() const { return static_cast<int>(layer_sizes.size()) - 1; }
};

// All parameters live in one flat vector; Layout maps layers into it.
using ParamVector = std::vector<double>;

// Per affine layer: W (out x in, row-major) at w_offset, then bias at b_offset.
struct Layout {
  struct Layer {
    int w_offset = 0;
    int b_offset = 0;
    int in = 0;
    int out = 0;
  };
  std::vector<Layer> layers;
  int total = 0;

  static Layout from_spec(const MlpSpec& spec);
};

// Glorot-uniform weights, zero biases; the output layer is scaled down hard
// so fresh heads start near zero.
ParamVector init_params(const MlpSpec& spec, Rng& rng, double out_scale = 0.01);

// Reusable buffers for batched passes. acts[l] holds layer l's activations
// for the whole batch (row-major, batch x width); preacts skip the input.
struct Workspace {
  std::vector<std::vector<double>> acts;
  std::vector<std::vector<double>> preacts;
  std::vector<double> delta;
  std::vector<double> delta_next;
  int batch = 0;
};

// Forward pass over a batch (input row-major, batch x input_size). Output
// lands in ws.acts.back(). Throws std::invalid_argument on shape mismatch.
void forward_batch(const ParamVector& params, const MlpSpec& spec, const Layout& layout,
                   std::span<const double> input, int batch, Workspace& ws);

// Reverse pass contracted with `upstream` (batch x output_size). Accumulates
// into param_grad (same length as params; caller zeroes it when starting a
// fresh gradient) and, when input_grad is non-null, writes dL/dinput.
void backward_batch(const ParamVector& params, const MlpSpec& spec, const Layout& layout,
                    std::span<const double> upstream, Workspace& ws, ParamVector& param_grad,
                    std::vector<double>* input_grad = nullptr);

// Single-sample convenience wrappers.
std::vector<double> mlp_forward(const ParamVector& params, const MlpSpec& spec,
                                const Layout& layout, std::span<const double> input);
ParamVector mlp_backward(const ParamVector& params, const MlpSpec& spec, const Layout& layout,
                         std::span<const double> input, std::span<const double> upstream,
                         std::vector<double>* input_grad = nullptr);

}  // namespace slicerl::nn
