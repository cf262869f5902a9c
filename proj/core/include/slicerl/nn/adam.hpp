#pragma once

#include <cstdint>

#include "slicerl/nn/mlp.hpp"

namespace slicerl::nn {

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct OptimizerState {
  AdamConfig cfg;
  std::vector<double> m;  // first moment, same length as params
  std::vector<double> v;  // second moment
  std::int64_t step = 0;

  OptimizerState() = default;
  explicit OptimizerState(size_t n, AdamConfig config = {})
      : cfg(config), m(n, 0.0), v(n, 0.0) {}
};

// Bias-corrected adaptive moment step: params -= lr * m_hat / (sqrt(v_hat) + eps).
// Throws std::invalid_argument on length mismatch.
void adam_update(ParamVector& params, const ParamVector& grads, OptimizerState& state);

}  // namespace slicerl::nn
