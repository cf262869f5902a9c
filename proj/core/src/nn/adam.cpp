#include "slicerl/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace slicerl::nn {

void adam_update(ParamVector& params, const ParamVector& grads, OptimizerState& state) {
  if (params.size() != grads.size() || params.size() != state.m.size() ||
      params.size() != state.v.size())
    throw std::invalid_argument("adam_update: length mismatch");
  state.step += 1;
  double c1 = 1.0 - std::pow(state.cfg.beta1, static_cast<double>(state.step));
  double c2 = 1.0 - std::pow(state.cfg.beta2, static_cast<double>(state.step));
  for (size_t i = 0; i < params.size(); ++i) {
    double g = grads[i];
    state.m[i] = state.cfg.beta1 * state.m[i] + (1.0 - state.cfg.beta1) * g;
    state.v[i] = state.cfg.beta2 * state.v[i] + (1.0 - state.cfg.beta2) * g * g;
    double m_hat = state.m[i] / c1;
    double v_hat = state.v[i] / c2;
    params[i] -= state.cfg.lr * m_hat / (std::sqrt(v_hat) + state.cfg.eps);
  }
}

}  // namespace slicerl::nn
