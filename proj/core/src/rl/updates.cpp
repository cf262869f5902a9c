#include "slicerl/rl/updates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slicerl/nn/policy.hpp"

namespace slicerl::rl {

Batch Batch::gather(std::span<const env::Transition* const> items, int obs_dim, int act_dim) {
  Batch b;
  b.size = static_cast<int>(items.size());
  b.obs_dim = obs_dim;
  b.act_dim = act_dim;
  b.obs.reserve(items.size() * static_cast<size_t>(obs_dim));
  b.act.reserve(items.size() * static_cast<size_t>(act_dim));
  b.act_logits.reserve(items.size() * static_cast<size_t>(act_dim));
  b.rew.reserve(items.size());
  b.next_obs.reserve(items.size() * static_cast<size_t>(obs_dim));
  for (const env::Transition* t : items) {
    if (static_cast<int>(t->obs.size()) != obs_dim ||
        static_cast<int>(t->next_obs.size()) != obs_dim ||
        t->action.size() != act_dim)
      throw std::invalid_argument("Batch::gather: transition shape mismatch");
    b.obs.insert(b.obs.end(), t->obs.begin(), t->obs.end());
    b.act.insert(b.act.end(), t->action.shares.begin(), t->action.shares.end());
    if (t->action.logits.empty())
      b.act_logits.insert(b.act_logits.end(), static_cast<size_t>(act_dim), 0.0);
    else
      b.act_logits.insert(b.act_logits.end(), t->action.logits.begin(), t->action.logits.end());
    b.rew.push_back(t->reward);
    b.next_obs.insert(b.next_obs.end(), t->next_obs.begin(), t->next_obs.end());
  }
  return b;
}

namespace {

// Forward the actor on a batch of observations and reparameterize one action
// per row. Outputs are row-major size x act_dim.
struct ActorSamples {
  std::vector<double> mean;
  std::vector<double> log_std;  // clamped
  std::vector<double> noise;
  std::vector<double> z;
  std::vector<double> shares;
  std::vector<double> log_prob;          // per row
  std::vector<double> raw_log_std;       // pre-clamp, for the clamp gate
};

ActorSamples sample_actions(const nn::ParamVector& actor, const nn::MlpSpec& spec,
                            const nn::Layout& layout, std::span<const double> obs, int rows,
                            int act_dim, Rng& rng, nn::Workspace* ws_out) {
  nn::Workspace local;
  nn::Workspace& ws = ws_out ? *ws_out : local;
  nn::forward_batch(actor, spec, layout, obs, rows, ws);
  const std::vector<double>& out = ws.acts.back();

  ActorSamples s;
  size_t n = static_cast<size_t>(rows) * act_dim;
  s.mean.resize(n);
  s.log_std.resize(n);
  s.noise.resize(n);
  s.z.resize(n);
  s.shares.resize(n);
  s.raw_log_std.resize(n);
  s.log_prob.assign(static_cast<size_t>(rows), 0.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int b = 0; b < rows; ++b) {
    size_t row_out = static_cast<size_t>(b) * 2 * act_dim;
    size_t row = static_cast<size_t>(b) * act_dim;
    for (int i = 0; i < act_dim; ++i) {
      s.mean[row + i] = out[row_out + i];
      s.raw_log_std[row + i] = out[row_out + act_dim + i];
      s.log_std[row + i] = std::clamp(s.raw_log_std[row + i], nn::kLogStdMin, nn::kLogStdMax);
      s.noise[row + i] = gauss(rng);
      s.z[row + i] = s.mean[row + i] + std::exp(s.log_std[row + i]) * s.noise[row + i];
    }
    std::vector<double> y = nn::softmax({s.z.data() + row, static_cast<size_t>(act_dim)});
    std::copy(y.begin(), y.end(), s.shares.begin() + static_cast<long>(row));
    s.log_prob[static_cast<size_t>(b)] = nn::diag_gaussian_log_density(
        {s.z.data() + row, static_cast<size_t>(act_dim)},
        {s.mean.data() + row, static_cast<size_t>(act_dim)},
        {s.log_std.data() + row, static_cast<size_t>(act_dim)});
  }
  return s;
}

std::vector<double> concat_rows(std::span<const double> a, int a_width, std::span<const double> b,
                                int b_width, int rows) {
  std::vector<double> out(static_cast<size_t>(rows) * (a_width + b_width));
  for (int r = 0; r < rows; ++r) {
    std::copy(a.begin() + static_cast<long>(r) * a_width,
              a.begin() + static_cast<long>(r + 1) * a_width,
              out.begin() + static_cast<long>(r) * (a_width + b_width));
    std::copy(b.begin() + static_cast<long>(r) * b_width,
              b.begin() + static_cast<long>(r + 1) * b_width,
              out.begin() + static_cast<long>(r) * (a_width + b_width) + a_width);
  }
  return out;
}

}  // namespace

std::vector<double> critic_values(const nn::ParamVector& params, const AgentState& agent,
                                  std::span<const double> obs, std::span<const double> act,
                                  int rows) {
  std::vector<double> input = concat_rows(obs, agent.obs_dim(), act, agent.act_dim(), rows);
  nn::Workspace ws;
  nn::forward_batch(params, agent.critic_spec, agent.critic_layout, input, rows, ws);
  return ws.acts.back();
}

NextValue next_state_value(const Batch& batch, const AgentState& agent, Rng& rng,
                           bool use_targets) {
  ActorSamples s = sample_actions(agent.actor, agent.actor_spec, agent.actor_layout,
                                  batch.next_obs, batch.size, batch.act_dim, rng, nullptr);
  std::vector<double> q1 = critic_values(use_targets ? agent.target1 : agent.critic1, agent,
                                         batch.next_obs, s.shares, batch.size);
  std::vector<double> q2 = critic_values(use_targets ? agent.target2 : agent.critic2, agent,
                                         batch.next_obs, s.shares, batch.size);
  NextValue nv;
  nv.min_q.resize(static_cast<size_t>(batch.size));
  for (int b = 0; b < batch.size; ++b)
    nv.min_q[static_cast<size_t>(b)] =
        std::min(q1[static_cast<size_t>(b)], q2[static_cast<size_t>(b)]);
  nv.log_prob = std::move(s.log_prob);
  return nv;
}

std::vector<double> target_discounted(const Batch& batch, AgentState& agent, Rng& rng) {
  if (agent.mode() != Mode::discounted)
    throw std::logic_error("target_discounted: agent not in discounted mode");
  double gamma = agent.gamma();
  double c_ent = agent.config().target_entropy_term ? agent.config().c_ent : 0.0;
  NextValue nv = next_state_value(batch, agent, rng, true);
  std::vector<double> y(static_cast<size_t>(batch.size));
  for (int b = 0; b < batch.size; ++b)
    y[static_cast<size_t>(b)] =
        batch.rew[static_cast<size_t>(b)] +
        gamma * (nv.min_q[static_cast<size_t>(b)] - c_ent * nv.log_prob[static_cast<size_t>(b)]);
  return y;
}

std::vector<double> target_average(const Batch& batch, AgentState& agent, Rng& rng) {
  if (agent.mode() != Mode::average)
    throw std::logic_error("target_average: agent not in average mode");
  double rho = agent.rho();
  double c_ent = agent.config().target_entropy_term ? agent.config().c_ent : 0.0;
  NextValue nv = next_state_value(batch, agent, rng, true);
  std::vector<double> y(static_cast<size_t>(batch.size));
  for (int b = 0; b < batch.size; ++b)
    y[static_cast<size_t>(b)] =
        batch.rew[static_cast<size_t>(b)] - rho + nv.min_q[static_cast<size_t>(b)] -
        c_ent * nv.log_prob[static_cast<size_t>(b)];
  return y;
}

double critic_update(const Batch& batch, std::span<const double> y, AgentState& agent) {
  if (static_cast<int>(y.size()) != batch.size)
    throw std::invalid_argument("critic_update: y length != batch size");
  std::vector<double> input =
      concat_rows(batch.obs, batch.obs_dim, batch.act, batch.act_dim, batch.size);

  double loss_sum = 0;
  nn::ParamVector* critics[] = {&agent.critic1, &agent.critic2};
  nn::OptimizerState* opts[] = {&agent.critic1_opt, &agent.critic2_opt};
  for (int k = 0; k < 2; ++k) {
    nn::Workspace ws;
    nn::forward_batch(*critics[k], agent.critic_spec, agent.critic_layout, input, batch.size, ws);
    const std::vector<double>& q = ws.acts.back();
    std::vector<double> upstream(static_cast<size_t>(batch.size));
    double mse = 0;
    for (int b = 0; b < batch.size; ++b) {
      double d = q[static_cast<size_t>(b)] - y[static_cast<size_t>(b)];
      mse += d * d;
      upstream[static_cast<size_t>(b)] = 2.0 * d / batch.size;
    }
    mse /= batch.size;
    loss_sum += mse;
    nn::ParamVector grad(critics[k]->size(), 0.0);
    nn::backward_batch(*critics[k], agent.critic_spec, agent.critic_layout, upstream, ws, grad);
    nn::adam_update(*critics[k], grad, *opts[k]);
  }
  return loss_sum / 2.0;
}

namespace {

double actor_update_reparam(const Batch& batch, AgentState& agent, Rng& rng) {
  double c_ent = agent.config().c_ent;
  nn::Workspace actor_ws;
  ActorSamples s = sample_actions(agent.actor, agent.actor_spec, agent.actor_layout, batch.obs,
                                  batch.size, batch.act_dim, rng, &actor_ws);

  std::vector<double> input =
      concat_rows(batch.obs, batch.obs_dim, s.shares, batch.act_dim, batch.size);
  nn::Workspace cw1, cw2;
  nn::forward_batch(agent.critic1, agent.critic_spec, agent.critic_layout, input, batch.size, cw1);
  nn::forward_batch(agent.critic2, agent.critic_spec, agent.critic_layout, input, batch.size, cw2);
  const std::vector<double>& q1 = cw1.acts.back();
  const std::vector<double>& q2 = cw2.acts.back();

  // objective J = mean(min Q - c_ent * logpi); loss = -J
  double loss = 0;
  std::vector<double> up1(static_cast<size_t>(batch.size), 0.0);
  std::vector<double> up2(static_cast<size_t>(batch.size), 0.0);
  for (int b = 0; b < batch.size; ++b) {
    size_t i = static_cast<size_t>(b);
    double min_q = std::min(q1[i], q2[i]);
    loss += -(min_q - c_ent * s.log_prob[i]) / batch.size;
    // d(loss)/dQ_min = -1/B, routed through whichever critic attains the min
    if (q1[i] <= q2[i])
      up1[i] = -1.0 / batch.size;
    else
      up2[i] = -1.0 / batch.size;
  }

  // pull dloss/da out of the critics (params fixed, only input grads used)
  nn::ParamVector scratch(agent.critic1.size(), 0.0);
  std::vector<double> dinput1, dinput2;
  nn::backward_batch(agent.critic1, agent.critic_spec, agent.critic_layout, up1, cw1, scratch,
                     &dinput1);
  scratch.assign(agent.critic2.size(), 0.0);
  nn::backward_batch(agent.critic2, agent.critic_spec, agent.critic_layout, up2, cw2, scratch,
                     &dinput2);

  // assemble upstream for the actor output: [dmean | dlog_std]
  int act_dim = batch.act_dim;
  int in_width = batch.obs_dim + act_dim;
  std::vector<double> upstream(static_cast<size_t>(batch.size) * 2 * act_dim, 0.0);
  std::vector<double> da(static_cast<size_t>(act_dim));
  for (int b = 0; b < batch.size; ++b) {
    size_t row = static_cast<size_t>(b) * act_dim;
    for (int i = 0; i < act_dim; ++i)
      da[static_cast<size_t>(i)] =
          dinput1[static_cast<size_t>(b) * in_width + batch.obs_dim + i] +
          dinput2[static_cast<size_t>(b) * in_width + batch.obs_dim + i];
    std::vector<double> dz =
        nn::softmax_vjp({s.shares.data() + row, static_cast<size_t>(act_dim)}, da);
    size_t out_row = static_cast<size_t>(b) * 2 * act_dim;
    for (int i = 0; i < act_dim; ++i) {
      double dzi = dz[static_cast<size_t>(i)];
      // z = mean + exp(log_std) * noise; total d logpi / d log_std = -1 under
      // reparameterization, so the c_ent * logpi term pulls log_std upward
      double dmean = dzi;
      double dlog_std = dzi * std::exp(s.log_std[row + i]) * s.noise[row + i] -
                        c_ent / batch.size;
      bool clamped = s.raw_log_std[row + i] <= nn::kLogStdMin ||
                     s.raw_log_std[row + i] >= nn::kLogStdMax;
      upstream[out_row + static_cast<size_t>(i)] = dmean;
      upstream[out_row + static_cast<size_t>(act_dim + i)] = clamped ? 0.0 : dlog_std;
    }
  }

  nn::ParamVector grad(agent.actor.size(), 0.0);
  nn::backward_batch(agent.actor, agent.actor_spec, agent.actor_layout, upstream, actor_ws, grad);
  nn::adam_update(agent.actor, grad, agent.actor_opt);
  return loss;
}

double actor_update_likelihood_ratio(const Batch& batch, AgentState& agent, Rng& rng) {
  // Literal ascent on mean(logpi(a~|s) * min Q(s, a~)), score-function form:
  // gradient flows only through the density, Q is a constant weight.
  nn::Workspace actor_ws;
  ActorSamples s = sample_actions(agent.actor, agent.actor_spec, agent.actor_layout, batch.obs,
                                  batch.size, batch.act_dim, rng, &actor_ws);
  std::vector<double> q1 =
      critic_values(agent.critic1, agent, batch.obs, s.shares, batch.size);
  std::vector<double> q2 =
      critic_values(agent.critic2, agent, batch.obs, s.shares, batch.size);

  int act_dim = batch.act_dim;
  std::vector<double> upstream(static_cast<size_t>(batch.size) * 2 * act_dim, 0.0);
  double loss = 0;
  for (int b = 0; b < batch.size; ++b) {
    size_t i = static_cast<size_t>(b);
    size_t row = static_cast<size_t>(b) * act_dim;
    size_t out_row = static_cast<size_t>(b) * 2 * act_dim;
    double w = std::min(q1[i], q2[i]);
    loss += -s.log_prob[i] * w / batch.size;
    for (int k = 0; k < act_dim; ++k) {
      // d logpi / d mean = noise / std, d logpi / d log_std = noise^2 - 1
      double inv_std = std::exp(-s.log_std[row + k]);
      double dmean = s.noise[row + k] * inv_std;
      double dlog_std = s.noise[row + k] * s.noise[row + k] - 1.0;
      bool clamped = s.raw_log_std[row + k] <= nn::kLogStdMin ||
                     s.raw_log_std[row + k] >= nn::kLogStdMax;
      upstream[out_row + static_cast<size_t>(k)] = -w * dmean / batch.size;
      upstream[out_row + static_cast<size_t>(act_dim + k)] =
          clamped ? 0.0 : -w * dlog_std / batch.size;
    }
  }
  nn::ParamVector grad(agent.actor.size(), 0.0);
  nn::backward_batch(agent.actor, agent.actor_spec, agent.actor_layout, upstream, actor_ws, grad);
  nn::adam_update(agent.actor, grad, agent.actor_opt);
  return loss;
}

}  // namespace

double actor_update(const Batch& batch, AgentState& agent, Rng& rng) {
  if (agent.config().actor_grad == ActorGrad::reparam)
    return actor_update_reparam(batch, agent, rng);
  return actor_update_likelihood_ratio(batch, agent, rng);
}

double rho_update(const Batch& batch, AgentState& agent, Rng& rng) {
  if (agent.mode() != Mode::average)
    throw std::logic_error("rho_update: agent not in average mode");
  std::vector<double> q1 =
      critic_values(agent.critic1, agent, batch.obs, batch.act, batch.size);
  std::vector<double> q2 =
      critic_values(agent.critic2, agent, batch.obs, batch.act, batch.size);
  double rho = agent.rho();
  double mean_eps = 0;
  if (agent.config().rho_residual == RhoResidual::td) {
    NextValue nv = next_state_value(batch, agent, rng, false);
    for (int b = 0; b < batch.size; ++b) {
      size_t i = static_cast<size_t>(b);
      mean_eps += batch.rew[i] - rho + nv.min_q[i] - std::min(q1[i], q2[i]);
    }
  } else {
    for (int b = 0; b < batch.size; ++b) {
      size_t i = static_cast<size_t>(b);
      mean_eps += batch.rew[i] - rho - std::min(q1[i], q2[i]);
    }
  }
  mean_eps /= batch.size;
  agent.set_rho(rho + 2.0 * agent.config().lr_rho * mean_eps);
  return mean_eps;
}

void polyak_update(AgentState& agent) {
  double tau = agent.config().tau;
  for (size_t i = 0; i < agent.critic1.size(); ++i) {
    agent.target1[i] = tau * agent.critic1[i] + (1.0 - tau) * agent.target1[i];
    agent.target2[i] = tau * agent.critic2[i] + (1.0 - tau) * agent.target2[i];
  }
}

}  // namespace slicerl::rl
