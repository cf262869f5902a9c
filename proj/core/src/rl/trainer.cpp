#include "slicerl/rl/trainer.hpp"

#include <stdexcept>

#include "slicerl/common/csv.hpp"
#include "slicerl/nn/policy.hpp"
#include "slicerl/rl/rate_tracker.hpp"
#include "slicerl/rl/replay.hpp"
#include "slicerl/rl/updates.hpp"

namespace slicerl::rl {

const char* const kTrainLogHeader[8] = {"env_step",  "episode", "cumulative_reward",
                                        "avg_reward_per_step", "rho", "rho_emp",
                                        "critic_loss", "actor_loss"};

namespace {

std::vector<std::string> log_row(const EpisodeLog& e) {
  return {std::to_string(e.env_step),
          std::to_string(e.episode),
          fmt_double(e.cumulative_reward),
          fmt_double(e.avg_reward_per_step),
          e.has_rho ? fmt_double(e.rho) : std::string(),
          fmt_double(e.rho_emp),
          fmt_double(e.critic_loss),
          fmt_double(e.actor_loss)};
}

}  // namespace

TrainResult train(env::Environment& env, const AgentConfig& agent_cfg,
                  const TrainSchedule& schedule, std::uint64_t seed) {
  agent_cfg.validate();
  if (schedule.total_env_steps < 0)
    throw std::invalid_argument("train: total_env_steps must be >= 0");

  int obs_dim = static_cast<int>(env.observation().size());
  int act_dim = env.sim_config().num_slices;
  TrainResult result{.episodes = {},
                     .agent = AgentState(agent_cfg, obs_dim, act_dim, derive_seed(seed, 1)),
                     .rho_emp = 0};
  AgentState& agent = result.agent;
  Rng rng = make_rng(derive_seed(seed, 2));

  if (!schedule.checkpoint_init.empty()) agent.save_file(schedule.checkpoint_init);

  CsvWriter log;
  if (!schedule.log_path.empty()) {
    log.open(schedule.log_path);
    log.header({kTrainLogHeader, kTrainLogHeader + 8});
  }
  CsvWriter metrics;
  if (!schedule.metrics_path.empty()) {
    metrics.open(schedule.metrics_path);
    metrics.header({"step", "slice_id", "T_rx", "T_tx", "U", "D_vio", "D_avg", "rbgs_granted",
                    "rbgs_used"});
  }

  ReplayBuffer buffer(agent_cfg.replay_capacity);
  RateTracker tracker;
  bool is_average = agent_cfg.mode == Mode::average;

  env::Observation obs = env.observation();
  std::vector<double> episode_rewards;
  double episode_loss_c = 0, episode_loss_a = 0;
  std::int64_t episode_updates = 0;

  for (std::int64_t step = 1; step <= schedule.total_env_steps; ++step) {
    nn::PolicyOutput pol =
        nn::policy_sample(agent.actor, agent.actor_spec, agent.actor_layout, obs, rng);
    env::StepResult sr = env.step(pol.action);

    env::Transition t;
    t.obs = obs;
    t.action = pol.action;
    t.reward = sr.reward;
    t.next_obs = sr.obs;
    t.done = sr.done;
    buffer.push(std::move(t));
    episode_rewards.push_back(sr.reward);

    if (metrics.is_open()) {
      const auto& slice_metrics = env.last_metrics();
      for (size_t s = 0; s < slice_metrics.size(); ++s) {
        const auto& m = slice_metrics[s];
        metrics.row({std::to_string(step), std::to_string(s), fmt_double(m.rx_throughput),
                     fmt_double(m.offered_load), fmt_double(m.utilization),
                     fmt_double(m.delay_violation_rate), fmt_double(m.avg_delay),
                     std::to_string(m.rbgs_granted), std::to_string(m.rbgs_used)});
      }
    }

    if (buffer.size() >= static_cast<size_t>(agent_cfg.warmup_steps)) {
      for (int u = 0; u < agent_cfg.updates_per_step; ++u) {
        auto picks = buffer.sample(static_cast<size_t>(agent_cfg.batch_size),
                                   static_cast<size_t>(agent_cfg.warmup_steps), rng);
        if (!picks) break;
        Batch batch = Batch::gather(*picks, obs_dim, act_dim);
        std::vector<double> y = is_average ? target_average(batch, agent, rng)
                                           : target_discounted(batch, agent, rng);
        episode_loss_c += critic_update(batch, y, agent);
        episode_loss_a += actor_update(batch, agent, rng);
        if (is_average) rho_update(batch, agent, rng);
        polyak_update(agent);
        ++episode_updates;
      }
    }

    if (sr.done) {
      tracker.update(episode_rewards);
      EpisodeLog e;
      e.env_step = step;
      e.episode = env.episode_index();  // already advanced past this episode
      e.cumulative_reward = 0;
      for (double r : episode_rewards) e.cumulative_reward += r;
      e.avg_reward_per_step = e.cumulative_reward / static_cast<double>(episode_rewards.size());
      e.has_rho = is_average;
      if (is_average) e.rho = agent.rho();
      e.rho_emp = tracker.value;
      e.critic_loss = episode_updates > 0 ? episode_loss_c / static_cast<double>(episode_updates) : 0;
      e.actor_loss = episode_updates > 0 ? episode_loss_a / static_cast<double>(episode_updates) : 0;
      if (log.is_open()) log.row(log_row(e));
      result.episodes.push_back(e);
      episode_rewards.clear();
      episode_loss_c = episode_loss_a = 0;
      episode_updates = 0;
    }

    obs = env.observation();
  }

  result.rho_emp = tracker.value;
  if (log.is_open()) log.close();
  if (metrics.is_open()) metrics.close();
  if (schedule.total_env_steps > 0 && !schedule.checkpoint_final.empty())
    agent.save_file(schedule.checkpoint_final);
  return result;
}

}  // namespace slicerl::rl
