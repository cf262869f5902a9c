#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slicerl/env/environment.hpp"
#include "slicerl/rl/agent.hpp"

namespace slicerl::rl {

struct TrainSchedule {
  std::int64_t total_env_steps = 20000;
  std::string log_path;          // per-episode training log CSV; empty skips
  std::string metrics_path;      // per-interval slice metrics CSV; empty skips
  std::string checkpoint_init;   // agent checkpoint before any training
  std::string checkpoint_final;  // agent checkpoint after the last step
};

struct EpisodeLog {
  std::int64_t env_step = 0;  // env steps completed when the episode closed
  std::int64_t episode = 0;
  double cumulative_reward = 0;
  double avg_reward_per_step = 0;
  double rho = 0;       // meaningful only when has_rho
  bool has_rho = false; // average mode only; the CSV cell stays empty otherwise
  double rho_emp = 0;
  double critic_loss = 0;  // mean over the episode's updates, 0 before warmup
  double actor_loss = 0;
};

struct TrainResult {
  std::vector<EpisodeLog> episodes;
  AgentState agent;
  double rho_emp = 0;
};

// Full off-policy loop: act, store, and once the buffer passes warmup run
// critic, actor, (rho in average mode), and polyak updates each env step.
// Deterministic given the env's seed and `seed`.
TrainResult train(env::Environment& env, const AgentConfig& agent_cfg,
                  const TrainSchedule& schedule, std::uint64_t seed);

// Training-log CSV column order.
extern const char* const kTrainLogHeader[8];

}  // namespace slicerl::rl
