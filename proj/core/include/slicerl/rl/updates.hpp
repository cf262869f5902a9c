#pragma once

#include <span>
#include <vector>

#include "slicerl/common/rng.hpp"
#include "slicerl/env/environment.hpp"
#include "slicerl/rl/agent.hpp"

namespace slicerl::rl {

// Minibatch in flat row-major arrays. act holds the executed simplex shares
// (critic input); act_logits the pre-squash sample needed to recompute the
// stored action's log-density.
struct Batch {
  int size = 0;
  int obs_dim = 0;
  int act_dim = 0;
  std::vector<double> obs;
  std::vector<double> act;
  std::vector<double> act_logits;
  std::vector<double> rew;
  std::vector<double> next_obs;

  static Batch gather(std::span<const env::Transition* const> items, int obs_dim, int act_dim);
};

// Soft target y = r + gamma * (min_i Q_targ,i(s', a') - c_ent * logpi(a'|s')),
// a' freshly sampled from the actor. Bootstrap is never masked at done; the
// task is continuing and the episode boundary is an experimental device.
// Throws std::logic_error unless the agent is in discounted mode.
std::vector<double> target_discounted(const Batch& batch, AgentState& agent, Rng& rng);

// Average-reward target y = r - rho + min_i Q_targ,i(s', a') - c_ent * logpi.
// Throws std::logic_error unless the agent is in average mode.
std::vector<double> target_average(const Batch& batch, AgentState& agent, Rng& rng);

// One Adam step per critic on mean squared error to y (y is a constant
// here; no gradient flows through it). Returns the mean of the two losses.
double critic_update(const Batch& batch, std::span<const double> y, AgentState& agent);

// One ascent step on E[min Q(s, a(z)) - c_ent * logpi(z)] with z
// reparameterized (or the literal likelihood-ratio form when configured).
// Critics are read, never written. Returns the loss (negated objective).
double actor_update(const Batch& batch, AgentState& agent, Rng& rng);

// Gradient step on mean squared residual in rho. The paper residual is
// eps = r - rho - min Q(s,a) on current critics; the td variant adds the
// next-state value, eps = r - rho + min Q(s',a') - min Q(s,a). Updates rho
// in place and returns the mean residual. Average mode only.
double rho_update(const Batch& batch, AgentState& agent, Rng& rng);

// targets <- tau * critics + (1 - tau) * targets, elementwise.
void polyak_update(AgentState& agent);

// Twin-min target-critic value of (s', a') pairs, a' sampled from the actor:
// shared helper for the target builders and the td residual.
struct NextValue {
  std::vector<double> min_q;     // per row
  std::vector<double> log_prob;  // per row, of the sampled a'
};
NextValue next_state_value(const Batch& batch, const AgentState& agent, Rng& rng,
                           bool use_targets);

// Q values of explicit (obs, act) rows under one critic parameter vector.
std::vector<double> critic_values(const nn::ParamVector& params, const AgentState& agent,
                                  std::span<const double> obs, std::span<const double> act,
                                  int rows);

}  // namespace slicerl::rl
