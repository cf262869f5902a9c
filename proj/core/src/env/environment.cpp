#include "slicerl/env/environment.hpp"

#include <algorithm>
#include <stdexcept>

#include "slicerl/common/rng.hpp"

namespace slicerl::env {

namespace {
double clamp01(double v) { return std::min(std::max(v, 0.0), 1.0); }
}  // namespace

void EnvConfig::validate() const {
  if (horizon < 1) throw std::invalid_argument("EnvConfig: horizon must be >= 1");
  if (!(alpha >= 0)) throw std::invalid_argument("EnvConfig: alpha must be >= 0");
  if (!(delay_norm_factor > 0))
    throw std::invalid_argument("EnvConfig: delay_norm_factor must be > 0");
}

Observation observe(std::span<const sim::SliceMetrics> metrics, const sim::SimConfig& sim_cfg,
                    const EnvConfig& env_cfg) {
  if (static_cast<int>(metrics.size()) != sim_cfg.num_slices)
    throw std::invalid_argument("observe: metrics length != num_slices");
  Observation obs;
  obs.reserve(metrics.size() * 5);
  double delay_ceiling = env_cfg.delay_norm_factor * sim_cfg.delay_threshold;
  for (size_t i = 0; i < metrics.size(); ++i) {
    double load_ceiling = sim_cfg.ues_per_slice[i] * sim_cfg.offered_load_per_ue;
    obs.push_back(clamp01(metrics[i].rx_throughput / load_ceiling));
    obs.push_back(clamp01(metrics[i].offered_load / load_ceiling));
    obs.push_back(clamp01(metrics[i].utilization));
    obs.push_back(clamp01(metrics[i].delay_violation_rate));
    obs.push_back(clamp01(metrics[i].avg_delay / delay_ceiling));
  }
  return obs;
}

double reward(std::span<const sim::SliceMetrics> metrics, const sim::SimConfig& sim_cfg,
              const EnvConfig& env_cfg) {
  if (static_cast<int>(metrics.size()) != sim_cfg.num_slices)
    throw std::invalid_argument("reward: metrics length != num_slices");
  double r = 0;
  for (size_t i = 0; i < metrics.size(); ++i) {
    double load_ceiling = sim_cfg.ues_per_slice[i] * sim_cfg.offered_load_per_ue;
    r += clamp01(metrics[i].rx_throughput / load_ceiling) -
         env_cfg.alpha * metrics[i].delay_violation_rate;
  }
  return r;
}

Environment::Environment(sim::SimConfig sim_cfg, EnvConfig env_cfg, std::uint64_t seed)
    : env_cfg_(env_cfg), master_seed_(seed) {
  env_cfg_.validate();
  sim_.emplace_back(std::move(sim_cfg), derive_seed(master_seed_, 0));
  current_obs_.assign(static_cast<size_t>(sim_[0].config().num_slices) * 5, 0.0);
  initialized_ = true;
}

const sim::Simulator& Environment::simulator() const {
  if (!initialized_) throw std::logic_error("Environment: not initialized");
  return sim_[0];
}

const sim::SimConfig& Environment::sim_config() const { return simulator().config(); }

StepResult Environment::step(const ActionShares& action) {
  if (!initialized_) throw std::logic_error("Environment: step on uninitialized environment");
  sim::Simulator& world = sim_[0];
  if (action.size() != world.config().num_slices)
    throw std::invalid_argument("Environment: action length != num_slices");

  std::vector<int> allocation = action_to_allocation(action, world.config().num_rbgs);
  last_metrics_ = world.step(allocation);

  StepResult out;
  out.obs = observe(last_metrics_, world.config(), env_cfg_);
  out.reward = reward(last_metrics_, world.config(), env_cfg_);
  ++step_in_episode_;
  ++total_steps_;
  out.done = step_in_episode_ >= env_cfg_.horizon;
  if (out.done) {
    ++episode_index_;
    world.reset(derive_seed(master_seed_, static_cast<std::uint64_t>(episode_index_)));
    step_in_episode_ = 0;
    current_obs_.assign(out.obs.size(), 0.0);
  } else {
    current_obs_ = out.obs;
  }
  return out;
}

}  // namespace slicerl::env
