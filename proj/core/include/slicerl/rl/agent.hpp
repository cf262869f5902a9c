#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slicerl/nn/adam.hpp"
#include "slicerl/nn/mlp.hpp"

namespace slicerl::rl {

enum class Mode { discounted, average };
enum class ActorGrad { reparam, likelihood_ratio };
enum class RhoResidual { paper, td };

const char* to_string(Mode m);
const char* to_string(ActorGrad g);
const char* to_string(RhoResidual r);

struct AgentConfig {
  Mode mode = Mode::discounted;
  double gamma = 0.99;   // read in discounted mode only
  double rho_init = 0.0; // read in average mode only
  double tau = 0.005;
  double c_ent = 0.05;
  double lr = 3e-4;
  double lr_rho = 1e-5;
  std::size_t replay_capacity = 100000;
  int batch_size = 256;
  int warmup_steps = 1000;
  int updates_per_step = 1;
  std::vector<int> hidden = {256, 256};
  ActorGrad actor_grad = ActorGrad::reparam;
  RhoResidual rho_residual = RhoResidual::paper;
  bool target_entropy_term = true;  // subtract c_ent * logpi inside targets

  void validate() const;  // throws std::invalid_argument
};

// Parameters and optimizers for one actor + twin critics with targets.
// gamma() and rho() are mode-gated: touching the wrong one throws, and every
// legitimate read bumps a counter so tests can prove an update path never
// consulted the other mode's quantity.
class AgentState {
 public:
  AgentState(const AgentConfig& cfg, int obs_dim, int act_dim, std::uint64_t seed);

  const AgentConfig& config() const { return cfg_; }
  Mode mode() const { return cfg_.mode; }
  int obs_dim() const { return obs_dim_; }
  int act_dim() const { return act_dim_; }

  double gamma() const;        // throws std::logic_error in average mode
  double rho() const;          // throws std::logic_error in discounted mode
  void set_rho(double value);  // throws std::logic_error in discounted mode

  std::int64_t gamma_reads() const { return gamma_reads_; }
  std::int64_t rho_reads() const { return rho_reads_; }

  nn::MlpSpec actor_spec;
  nn::Layout actor_layout;
  nn::ParamVector actor;
  nn::OptimizerState actor_opt;

  nn::MlpSpec critic_spec;  // input obs ++ action, scalar output
  nn::Layout critic_layout;
  nn::ParamVector critic1, critic2;
  nn::ParamVector target1, target2;
  nn::OptimizerState critic1_opt, critic2_opt;

  // Checkpoint: agent header (mode; rho in average mode) followed by the five
  // networks as nn blocks. Optimizer state is not persisted.
  void save(std::ostream& os) const;
  void save_file(const std::string& path) const;
  static AgentState load(std::istream& is, const AgentConfig& cfg);
  static AgentState load_file(const std::string& path, const AgentConfig& cfg);

 private:
  AgentConfig cfg_;
  int obs_dim_ = 0;
  int act_dim_ = 0;
  double rho_ = 0;
  mutable std::int64_t gamma_reads_ = 0;
  mutable std::int64_t rho_reads_ = 0;
};

}  // namespace slicerl::rl
