#include "slicerl/rl/agent.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "slicerl/common/rng.hpp"
#include "slicerl/nn/serialize.hpp"

namespace slicerl::rl {

const char* to_string(Mode m) { return m == Mode::discounted ? "discounted" : "average"; }
const char* to_string(ActorGrad g) {
  return g == ActorGrad::reparam ? "reparam" : "likelihood_ratio";
}
const char* to_string(RhoResidual r) { return r == RhoResidual::paper ? "paper" : "td"; }

void AgentConfig::validate() const {
  if (mode == Mode::discounted && !(gamma >= 0 && gamma <= 1))
    throw std::invalid_argument("AgentConfig: gamma must be in [0,1] in discounted mode");
  if (!(tau >= 0 && tau <= 1)) throw std::invalid_argument("AgentConfig: tau must be in [0,1]");
  if (!(c_ent >= 0)) throw std::invalid_argument("AgentConfig: c_ent must be >= 0");
  if (!(lr >= 0)) throw std::invalid_argument("AgentConfig: lr must be >= 0");
  if (!(lr_rho >= 0)) throw std::invalid_argument("AgentConfig: lr_rho must be >= 0");
  if (replay_capacity == 0)
    throw std::invalid_argument("AgentConfig: replay_capacity must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("AgentConfig: batch_size must be >= 1");
  if (warmup_steps < 0) throw std::invalid_argument("AgentConfig: warmup_steps must be >= 0");
  if (updates_per_step < 0)
    throw std::invalid_argument("AgentConfig: updates_per_step must be >= 0");
  for (int h : hidden)
    if (h < 1) throw std::invalid_argument("AgentConfig: hidden sizes must be >= 1");
}

namespace {

nn::MlpSpec make_actor_spec(const AgentConfig& cfg, int obs_dim, int act_dim) {
  nn::MlpSpec spec;
  spec.layer_sizes.push_back(obs_dim);
  for (int h : cfg.hidden) spec.layer_sizes.push_back(h);
  spec.layer_sizes.push_back(2 * act_dim);  // means then raw log-stds
  return spec;
}

nn::MlpSpec make_critic_spec(const AgentConfig& cfg, int obs_dim, int act_dim) {
  nn::MlpSpec spec;
  spec.layer_sizes.push_back(obs_dim + act_dim);
  for (int h : cfg.hidden) spec.layer_sizes.push_back(h);
  spec.layer_sizes.push_back(1);
  return spec;
}

}  // namespace

AgentState::AgentState(const AgentConfig& cfg, int obs_dim, int act_dim, std::uint64_t seed)
    : cfg_(cfg), obs_dim_(obs_dim), act_dim_(act_dim), rho_(cfg.rho_init) {
  cfg_.validate();
  if (obs_dim < 1 || act_dim < 1)
    throw std::invalid_argument("AgentState: obs_dim and act_dim must be >= 1");

  actor_spec = make_actor_spec(cfg_, obs_dim, act_dim);
  actor_layout = nn::Layout::from_spec(actor_spec);
  critic_spec = make_critic_spec(cfg_, obs_dim, act_dim);
  critic_layout = nn::Layout::from_spec(critic_spec);

  Rng actor_rng = make_rng(derive_seed(seed, 1));
  Rng c1_rng = make_rng(derive_seed(seed, 2));
  Rng c2_rng = make_rng(derive_seed(seed, 3));
  actor = nn::init_params(actor_spec, actor_rng);
  critic1 = nn::init_params(critic_spec, c1_rng);
  critic2 = nn::init_params(critic_spec, c2_rng);
  target1 = critic1;
  target2 = critic2;

  nn::AdamConfig adam;
  adam.lr = cfg_.lr;
  actor_opt = nn::OptimizerState(actor.size(), adam);
  critic1_opt = nn::OptimizerState(critic1.size(), adam);
  critic2_opt = nn::OptimizerState(critic2.size(), adam);
}

double AgentState::gamma() const {
  if (cfg_.mode != Mode::discounted)
    throw std::logic_error("AgentState: gamma read in average mode");
  ++gamma_reads_;
  return cfg_.gamma;
}

double AgentState::rho() const {
  if (cfg_.mode != Mode::average)
    throw std::logic_error("AgentState: rho read in discounted mode");
  ++rho_reads_;
  return rho_;
}

void AgentState::set_rho(double value) {
  if (cfg_.mode != Mode::average)
    throw std::logic_error("AgentState: rho write in discounted mode");
  rho_ = value;
}

void AgentState::save(std::ostream& os) const {
  os << "slicerl-agent 1\n";
  os << "mode " << to_string(cfg_.mode) << '\n';
  if (cfg_.mode == Mode::average) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", rho_);
    os << "rho " << buf << '\n';
  }
  const char* names[] = {"actor", "critic1", "critic2", "target1", "target2"};
  const nn::ParamVector* nets[] = {&actor, &critic1, &critic2, &target1, &target2};
  for (int k = 0; k < 5; ++k) {
    os << '[' << names[k] << "]\n";
    nn::save_mlp(os, k == 0 ? actor_spec : critic_spec, *nets[k]);
  }
  if (!os) throw std::runtime_error("agent checkpoint: write failure");
}

void AgentState::save_file(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("agent checkpoint: cannot open " + path + " for writing");
  save(os);
}

AgentState AgentState::load(std::istream& is, const AgentConfig& cfg) {
  auto expect_line = [&is](const std::string& what) {
    std::string line;
    if (!std::getline(is, line))
      throw std::runtime_error("agent checkpoint: truncated, expected " + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };
  if (expect_line("magic") != "slicerl-agent 1")
    throw std::runtime_error("agent checkpoint: bad magic");
  std::string mode_line = expect_line("mode");
  std::string expected = std::string("mode ") + to_string(cfg.mode);
  if (mode_line != expected)
    throw std::runtime_error("agent checkpoint: stored '" + mode_line + "', config wants '" +
                             expected + "'");
  double stored_rho = 0;
  if (cfg.mode == Mode::average) {
    std::string rho_line = expect_line("rho");
    if (rho_line.rfind("rho ", 0) != 0) throw std::runtime_error("agent checkpoint: bad rho line");
    char* end = nullptr;
    stored_rho = std::strtod(rho_line.c_str() + 4, &end);
    if (end == rho_line.c_str() + 4) throw std::runtime_error("agent checkpoint: bad rho value");
  }

  const char* names[] = {"actor", "critic1", "critic2", "target1", "target2"};
  std::pair<nn::MlpSpec, nn::ParamVector> nets[5];
  for (int k = 0; k < 5; ++k) {
    std::string section = expect_line("section");
    if (section != std::string("[") + names[k] + "]")
      throw std::runtime_error("agent checkpoint: expected [" + std::string(names[k]) + "], got " +
                               section);
    nets[k] = nn::load_mlp(is);
  }

  int obs_plus_act = nets[1].first.input_size();
  int act_dim = nets[0].first.output_size() / 2;
  int obs_dim = obs_plus_act - act_dim;
  AgentState agent(cfg, obs_dim, act_dim, 0);
  if (nets[0].first.layer_sizes != agent.actor_spec.layer_sizes ||
      nets[1].first.layer_sizes != agent.critic_spec.layer_sizes)
    throw std::runtime_error("agent checkpoint: stored shapes do not match config");
  agent.actor = std::move(nets[0].second);
  agent.critic1 = std::move(nets[1].second);
  agent.critic2 = std::move(nets[2].second);
  agent.target1 = std::move(nets[3].second);
  agent.target2 = std::move(nets[4].second);
  agent.rho_ = cfg.mode == Mode::average ? stored_rho : 0.0;
  return agent;
}

AgentState AgentState::load_file(const std::string& path, const AgentConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("agent checkpoint: cannot open " + path);
  return load(is, cfg);
}

}  // namespace slicerl::rl
