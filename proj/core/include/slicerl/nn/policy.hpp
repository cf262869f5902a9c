#pragma once

#include <span>
#include <vector>

#include "slicerl/common/rng.hpp"
#include "slicerl/env/action.hpp"
#include "slicerl/nn/mlp.hpp"

namespace slicerl::nn {

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;

// Max-shifted softmax.
std::vector<double> softmax(std::span<const double> z);

// Pullback through softmax: given y = softmax(z) and upstream dL/dy,
// dL/dz_i = y_i * (up_i - sum_j up_j * y_j).
std::vector<double> softmax_vjp(std::span<const double> y, std::span<const double> upstream);

// log N(z; mean, diag(exp(log_std))^2), summed over dimensions.
double diag_gaussian_log_density(std::span<const double> z, std::span<const double> mean,
                                 std::span<const double> log_std);

// One policy head evaluation. The network emits 2N outputs: means first,
// then raw log-stds (clamped into [kLogStdMin, kLogStdMax]). z is the
// reparameterized sample mean + std * noise; the action squashes z through
// softmax; log_prob is the Gaussian density of z, not of the squashed point.
struct PolicyOutput {
  std::vector<double> mean;
  std::vector<double> log_std;  // clamped
  std::vector<double> noise;    // standard normal draws
  std::vector<double> z;
  double log_prob = 0;
  env::ActionShares action;
};

// Splits a raw 2N network output into the head quantities given noise.
PolicyOutput policy_head(std::span<const double> net_out, std::span<const double> noise);

// Samples noise from rng and runs the head on a forward pass of `params`.
PolicyOutput policy_sample(const ParamVector& params, const MlpSpec& spec, const Layout& layout,
                           std::span<const double> obs, Rng& rng);

}  // namespace slicerl::nn
