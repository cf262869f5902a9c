#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slicerl/env/environment.hpp"
#include "slicerl/rl/agent.hpp"
#include "slicerl/sim/types.hpp"

namespace slicerl::harness {

enum class ExperimentKind { single, gamma_sweep, horizon_sweep, compare };

const char* to_string(ExperimentKind k);
ExperimentKind experiment_kind_from(const std::string& name);  // throws on unknown

// Everything a study needs, resolved against defaults. Sections map to the
// config file: [sim], [env], [agent], [experiment].
struct ExperimentConfig {
  sim::SimConfig sim;
  env::EnvConfig env;
  rl::AgentConfig agent;

  ExperimentKind kind = ExperimentKind::single;
  std::vector<double> gamma_values = {0.9, 0.95, 0.99};
  std::vector<int> horizon_values = {200, 1000};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::vector<std::vector<int>> ue_combos;  // compare only; paired with seeds
  std::int64_t total_env_steps = 20000;
  std::string out_dir = "runs";
  int workers = 1;
  double final_window_fraction = 0.1;
  double compare_gamma = 0.99;  // discounted baseline arm

  void validate() const;  // throws std::invalid_argument

  // Deterministic key=value dump of every resolved field; hashing this pins
  // the full effective configuration, defaults included.
  std::string canonical_string() const;
  std::string config_hash() const;  // fnv1a64 of canonical_string, hex
};

// Parses the [sim]/[env]/[agent]/[experiment] sections over built-in
// defaults. Unknown sections and keys are rejected; malformed values are
// reported with their file line.
ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::string& name = "<string>");

}  // namespace slicerl::harness
