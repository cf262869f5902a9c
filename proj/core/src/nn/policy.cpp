#include "slicerl/nn/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slicerl::nn {

namespace {
constexpr double kLogTwoPi = 1.8378770664093454836;
}

std::vector<double> softmax(std::span<const double> z) {
  if (z.empty()) throw std::invalid_argument("softmax: empty input");
  double mx = *std::max_element(z.begin(), z.end());
  std::vector<double> y(z.size());
  double sum = 0;
  for (size_t i = 0; i < z.size(); ++i) {
    y[i] = std::exp(z[i] - mx);
    sum += y[i];
  }
  for (double& v : y) v /= sum;
  return y;
}

std::vector<double> softmax_vjp(std::span<const double> y, std::span<const double> upstream) {
  if (y.size() != upstream.size()) throw std::invalid_argument("softmax_vjp: length mismatch");
  double dot = 0;
  for (size_t i = 0; i < y.size(); ++i) dot += upstream[i] * y[i];
  std::vector<double> dz(y.size());
  for (size_t i = 0; i < y.size(); ++i) dz[i] = y[i] * (upstream[i] - dot);
  return dz;
}

double diag_gaussian_log_density(std::span<const double> z, std::span<const double> mean,
                                 std::span<const double> log_std) {
  if (z.size() != mean.size() || z.size() != log_std.size())
    throw std::invalid_argument("diag_gaussian_log_density: length mismatch");
  double lp = 0;
  for (size_t i = 0; i < z.size(); ++i) {
    double inv_std = std::exp(-log_std[i]);
    double u = (z[i] - mean[i]) * inv_std;
    lp += -log_std[i] - 0.5 * u * u - 0.5 * kLogTwoPi;
  }
  return lp;
}

PolicyOutput policy_head(std::span<const double> net_out, std::span<const double> noise) {
  if (net_out.size() % 2 != 0 || net_out.empty())
    throw std::invalid_argument("policy_head: net output must have even length");
  size_t n = net_out.size() / 2;
  if (noise.size() != n) throw std::invalid_argument("policy_head: noise length mismatch");

  PolicyOutput out;
  out.mean.assign(net_out.begin(), net_out.begin() + static_cast<long>(n));
  out.log_std.resize(n);
  out.noise.assign(noise.begin(), noise.end());
  out.z.resize(n);
  for (size_t i = 0; i < n; ++i) {
    out.log_std[i] = std::clamp(net_out[n + i], kLogStdMin, kLogStdMax);
    out.z[i] = out.mean[i] + std::exp(out.log_std[i]) * noise[i];
  }
  // density of the realized z; with z = mean + std*noise this reduces to
  // sum(-log_std - noise^2/2 - log(2*pi)/2)
  out.log_prob = diag_gaussian_log_density(out.z, out.mean, out.log_std);
  out.action = env::ActionShares::from_logits(out.z);
  return out;
}

PolicyOutput policy_sample(const ParamVector& params, const MlpSpec& spec, const Layout& layout,
                           std::span<const double> obs, Rng& rng) {
  std::vector<double> net_out = mlp_forward(params, spec, layout, obs);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> noise(net_out.size() / 2);
  for (double& e : noise) e = gauss(rng);
  return policy_head(net_out, noise);
}

}  // namespace slicerl::nn
