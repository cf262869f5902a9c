#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slicerl/env/action.hpp"
#include "slicerl/sim/simulator.hpp"

namespace slicerl::env {

// Flat observation, slice-major: per slice {T_rx, T_tx, U, D_vio, D_avg},
// each normalized into [0,1]. Length 5 * num_slices.
using Observation = std::vector<double>;

struct EnvConfig {
  int horizon = 200;               // steps per episode before auto-reset
  double alpha = 4.0;              // delay-violation penalty weight
  double delay_norm_factor = 10.0; // D_avg normalized by factor * delay_threshold

  void validate() const;  // throws std::invalid_argument
};

// Throughputs are normalized by the per-slice offered-load ceiling
// (ues * per-UE load); D_avg by delay_norm_factor * delay_threshold.
// Every entry is clamped into [0,1].
Observation observe(std::span<const sim::SliceMetrics> metrics, const sim::SimConfig& sim_cfg,
                    const EnvConfig& env_cfg);

// sum_i (normalized T_rx_i - alpha * D_vio_i); range [-alpha*N, N].
double reward(std::span<const sim::SliceMetrics> metrics, const sim::SimConfig& sim_cfg,
              const EnvConfig& env_cfg);

struct Transition {
  Observation obs;
  ActionShares action;
  double reward = 0;
  Observation next_obs;
  bool done = false;  // horizon marker only; targets never mask on it
};

struct StepResult {
  Observation obs;  // at a horizon boundary this is the pre-reset observation
  double reward = 0;
  bool done = false;
};

// MDP wrapper over one Simulator. Episodes last exactly `horizon` steps; at
// the boundary the result carries done=true and the pre-reset observation
// while the simulator restarts under a fresh sub-seed. Reset seeds derive
// from the master seed and the episode index alone, so the realized worlds
// are identical across runs regardless of the action sequence.
class Environment {
 public:
  Environment() = default;  // uninitialized; step() throws until configured
  Environment(sim::SimConfig sim_cfg, EnvConfig env_cfg, std::uint64_t seed);

  StepResult step(const ActionShares& action);

  // Observation the next action should be chosen from: all zeros right after
  // a reset, otherwise the last step's observation.
  const Observation& observation() const { return current_obs_; }

  const std::vector<sim::SliceMetrics>& last_metrics() const { return last_metrics_; }
  const sim::Simulator& simulator() const;
  const sim::SimConfig& sim_config() const;
  const EnvConfig& env_config() const { return env_cfg_; }
  int step_in_episode() const { return step_in_episode_; }
  std::int64_t episode_index() const { return episode_index_; }
  std::int64_t total_steps() const { return total_steps_; }

 private:
  bool initialized_ = false;
  EnvConfig env_cfg_;
  std::uint64_t master_seed_ = 0;
  std::vector<sim::Simulator> sim_;  // 0 or 1 elements; avoids a default-constructible Simulator
  Observation current_obs_;
  std::vector<sim::SliceMetrics> last_metrics_;
  int step_in_episode_ = 0;
  std::int64_t episode_index_ = 0;
  std::int64_t total_steps_ = 0;
};

}  // namespace slicerl::env
