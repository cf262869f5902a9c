#include "slicerl/harness/config.hpp"

#include <climits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "slicerl/common/csv.hpp"
#include "slicerl/common/hash.hpp"
#include "slicerl/common/ini.hpp"

namespace slicerl::harness {

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::single: return "single";
    case ExperimentKind::gamma_sweep: return "gamma_sweep";
    case ExperimentKind::horizon_sweep: return "horizon_sweep";
    case ExperimentKind::compare: return "compare";
  }
  return "?";
}

ExperimentKind experiment_kind_from(const std::string& name) {
  if (name == "single") return ExperimentKind::single;
  if (name == "gamma_sweep") return ExperimentKind::gamma_sweep;
  if (name == "horizon_sweep") return ExperimentKind::horizon_sweep;
  if (name == "compare") return ExperimentKind::compare;
  throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

namespace {

rl::Mode mode_from_algo(const std::string& algo) {
  if (algo == "sac") return rl::Mode::discounted;
  if (algo == "aro-sac") return rl::Mode::average;
  throw std::invalid_argument("unknown algo '" + algo + "' (want sac or aro-sac)");
}

void reject_unknown(const IniFile& ini, const std::string& section,
                    const std::set<std::string>& known) {
  for (const std::string& key : ini.keys(section))
    if (!known.count(key))
      throw std::invalid_argument("config: unknown key '" + key + "' in section [" + section +
                                  "]");
}

std::vector<int> to_int_vec(const std::vector<long long>& xs, const char* what) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (long long x : xs) {
    if (x < INT_MIN || x > INT_MAX)
      throw std::invalid_argument(std::string("config: ") + what + " out of int range");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  sim.validate();
  env.validate();
  agent.validate();
  if (seeds.empty()) throw std::invalid_argument("config: seed list must be nonempty");
  if (gamma_values.empty())
    throw std::invalid_argument("config: gamma_values must be nonempty");
  for (double g : gamma_values)
    if (!(g > 0 && g <= 1))
      throw std::invalid_argument("config: gamma values must lie in (0,1]");
  if (horizon_values.empty())
    throw std::invalid_argument("config: horizon_values must be nonempty");
  for (int t : horizon_values)
    if (t < 1) throw std::invalid_argument("config: horizon values must be >= 1");
  if (!(compare_gamma > 0 && compare_gamma <= 1))
    throw std::invalid_argument("config: compare_gamma must lie in (0,1]");
  if (total_env_steps < 0)
    throw std::invalid_argument("config: total_env_steps must be >= 0");
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
  if (!(final_window_fraction > 0 && final_window_fraction <= 1))
    throw std::invalid_argument("config: final_window_fraction must lie in (0,1]");
  if (kind == ExperimentKind::compare) {
    if (ue_combos.size() != seeds.size())
      throw std::invalid_argument("config: compare pairs seeds with ue_combos; list lengths differ");
    for (const auto& combo : ue_combos) {
      if (static_cast<int>(combo.size()) != sim.num_slices)
        throw std::invalid_argument("config: ue_combo length != num_slices");
      for (int u : combo)
        if (u < 1) throw std::invalid_argument("config: ue_combo entries must be >= 1");
    }
  }
}

std::string ExperimentConfig::canonical_string() const {
  std::ostringstream os;
  auto d = [](double v) { return fmt_double(v); };
  os << "agent.actor_grad = " << rl::to_string(agent.actor_grad) << '\n';
  os << "agent.algo = " << (agent.mode == rl::Mode::average ? "aro-sac" : "sac") << '\n';
  os << "agent.batch_size = " << agent.batch_size << '\n';
  os << "agent.c_ent = " << d(agent.c_ent) << '\n';
  os << "agent.gamma = " << d(agent.gamma) << '\n';
  os << "agent.hidden =";
  for (int h : agent.hidden) os << ' ' << h;
  os << '\n';
  os << "agent.lr = " << d(agent.lr) << '\n';
  os << "agent.lr_rho = " << d(agent.lr_rho) << '\n';
  os << "agent.replay_capacity = " << agent.replay_capacity << '\n';
  os << "agent.rho_init = " << d(agent.rho_init) << '\n';
  os << "agent.rho_residual = " << rl::to_string(agent.rho_residual) << '\n';
  os << "agent.target_entropy_term = " << (agent.target_entropy_term ? 1 : 0) << '\n';
  os << "agent.tau = " << d(agent.tau) << '\n';
  os << "agent.updates_per_step = " << agent.updates_per_step << '\n';
  os << "agent.warmup_steps = " << agent.warmup_steps << '\n';
  os << "env.alpha = " << d(env.alpha) << '\n';
  os << "env.delay_norm_factor = " << d(env.delay_norm_factor) << '\n';
  os << "env.horizon = " << env.horizon << '\n';
  os << "experiment.compare_gamma = " << d(compare_gamma) << '\n';
  os << "experiment.final_window_fraction = " << d(final_window_fraction) << '\n';
  os << "experiment.gamma_values =";
  for (double g : gamma_values) os << ' ' << d(g);
  os << '\n';
  os << "experiment.horizon_values =";
  for (int t : horizon_values) os << ' ' << t;
  os << '\n';
  os << "experiment.kind = " << to_string(kind) << '\n';
  os << "experiment.out_dir = " << out_dir << '\n';
  os << "experiment.seeds =";
  for (std::uint64_t s : seeds) os << ' ' << s;
  os << '\n';
  os << "experiment.total_env_steps = " << total_env_steps << '\n';
  os << "experiment.ue_combos =";
  for (size_t i = 0; i < ue_combos.size(); ++i) {
    os << (i ? " ;" : "");
    for (int u : ue_combos[i]) os << ' ' << u;
  }
  os << '\n';
  os << "experiment.workers = " << workers << '\n';
  os << "sim.area_x = " << d(sim.area_x) << '\n';
  os << "sim.area_y = " << d(sim.area_y) << '\n';
  os << "sim.control_interval = " << d(sim.control_interval) << '\n';
  os << "sim.delay_threshold = " << d(sim.delay_threshold) << '\n';
  os << "sim.drop_age_factor = " << d(sim.drop_age_factor) << '\n';
  os << "sim.ewma_beta = " << d(sim.ewma_beta) << '\n';
  os << "sim.ewma_floor = " << d(sim.ewma_floor) << '\n';
  os << "sim.num_rbgs = " << sim.num_rbgs << '\n';
  os << "sim.num_slices = " << sim.num_slices << '\n';
  os << "sim.offered_load_per_ue = " << d(sim.offered_load_per_ue) << '\n';
  os << "sim.packet_size = " << d(sim.packet_size) << '\n';
  os << "sim.pathloss_exponent = " << d(sim.pathloss_exponent) << '\n';
  os << "sim.rbg_bandwidth = " << d(sim.rbg_bandwidth) << '\n';
  os << "sim.ref_distance = " << d(sim.ref_distance) << '\n';
  os << "sim.snr_ref_db = " << d(sim.snr_ref_db) << '\n';
  os << "sim.speed_max = " << d(sim.speed_max) << '\n';
  os << "sim.speed_min = " << d(sim.speed_min) << '\n';
  os << "sim.subframes_per_interval = " << sim.subframes_per_interval << '\n';
  os << "sim.ues_per_slice =";
  for (int u : sim.ues_per_slice) os << ' ' << u;
  os << '\n';
  return os.str();
}

std::string ExperimentConfig::config_hash() const { return to_hex(fnv1a64(canonical_string())); }

namespace {

ExperimentConfig from_ini(const IniFile& ini) {
  ExperimentConfig cfg;
  // Five default per-slice UE-count vectors for the paired comparison study.
  cfg.ue_combos = {{7, 6, 9}, {6, 8, 9}, {9, 7, 6}, {8, 6, 10}, {6, 10, 8}};

  static const std::set<std::string> known_sections = {"sim", "env", "agent", "experiment"};
  for (const std::string& section : ini.section_names())
    if (!known_sections.count(section))
      throw std::invalid_argument("config: unknown section [" + section + "]");

  reject_unknown(ini, "sim",
                 {"num_slices", "num_rbgs", "ues_per_slice", "offered_load_per_ue",
                  "delay_threshold", "area_x", "area_y", "speed_min", "speed_max",
                  "control_interval", "subframes_per_interval", "packet_size", "rbg_bandwidth",
                  "snr_ref_db", "pathloss_exponent", "ref_distance", "ewma_beta", "ewma_floor",
                  "drop_age_factor"});
  reject_unknown(ini, "env", {"horizon", "alpha", "delay_norm_factor"});
  reject_unknown(ini, "agent",
                 {"algo", "gamma", "rho_init", "tau", "c_ent", "lr", "lr_rho", "replay_capacity",
                  "batch_size", "warmup_steps", "updates_per_step", "hidden", "actor_grad",
                  "rho_residual", "target_entropy_term"});
  reject_unknown(ini, "experiment",
                 {"kind", "gamma_values", "horizon_values", "seeds", "ue_combos",
                  "total_env_steps", "out_dir", "workers", "final_window_fraction",
                  "compare_gamma"});

  sim::SimConfig& s = cfg.sim;
  s.num_slices = static_cast<int>(ini.get_int("sim", "num_slices", s.num_slices));
  s.num_rbgs = static_cast<int>(ini.get_int("sim", "num_rbgs", s.num_rbgs));
  if (ini.has("sim", "ues_per_slice"))
    s.ues_per_slice = to_int_vec(ini.get_int_list("sim", "ues_per_slice"), "ues_per_slice");
  s.offered_load_per_ue = ini.get_double("sim", "offered_load_per_ue", s.offered_load_per_ue);
  s.delay_threshold = ini.get_double("sim", "delay_threshold", s.delay_threshold);
  s.area_x = ini.get_double("sim", "area_x", s.area_x);
  s.area_y = ini.get_double("sim", "area_y", s.area_y);
  s.speed_min = ini.get_double("sim", "speed_min", s.speed_min);
  s.speed_max = ini.get_double("sim", "speed_max", s.speed_max);
  s.control_interval = ini.get_double("sim", "control_interval", s.control_interval);
  s.subframes_per_interval =
      static_cast<int>(ini.get_int("sim", "subframes_per_interval", s.subframes_per_interval));
  s.packet_size = ini.get_double("sim", "packet_size", s.packet_size);
  s.rbg_bandwidth = ini.get_double("sim", "rbg_bandwidth", s.rbg_bandwidth);
  s.snr_ref_db = ini.get_double("sim", "snr_ref_db", s.snr_ref_db);
  s.pathloss_exponent = ini.get_double("sim", "pathloss_exponent", s.pathloss_exponent);
  s.ref_distance = ini.get_double("sim", "ref_distance", s.ref_distance);
  s.ewma_beta = ini.get_double("sim", "ewma_beta", s.ewma_beta);
  s.ewma_floor = ini.get_double("sim", "ewma_floor", s.ewma_floor);
  s.drop_age_factor = ini.get_double("sim", "drop_age_factor", s.drop_age_factor);

  env::EnvConfig& e = cfg.env;
  e.horizon = static_cast<int>(ini.get_int("env", "horizon", e.horizon));
  e.alpha = ini.get_double("env", "alpha", e.alpha);
  e.delay_norm_factor = ini.get_double("env", "delay_norm_factor", e.delay_norm_factor);

  rl::AgentConfig& a = cfg.agent;
  a.mode = mode_from_algo(ini.get_string("agent", "algo", "sac"));
  a.gamma = ini.get_double("agent", "gamma", a.gamma);
  a.rho_init = ini.get_double("agent", "rho_init", a.rho_init);
  a.tau = ini.get_double("agent", "tau", a.tau);
  a.c_ent = ini.get_double("agent", "c_ent", a.c_ent);
  a.lr = ini.get_double("agent", "lr", a.lr);
  a.lr_rho = ini.get_double("agent", "lr_rho", a.lr_rho);
  long long cap = ini.get_int("agent", "replay_capacity", static_cast<long long>(a.replay_capacity));
  if (cap < 1) throw std::invalid_argument("config: replay_capacity must be >= 1");
  a.replay_capacity = static_cast<std::size_t>(cap);
  a.batch_size = static_cast<int>(ini.get_int("agent", "batch_size", a.batch_size));
  a.warmup_steps = static_cast<int>(ini.get_int("agent", "warmup_steps", a.warmup_steps));
  a.updates_per_step =
      static_cast<int>(ini.get_int("agent", "updates_per_step", a.updates_per_step));
  if (ini.has("agent", "hidden"))
    a.hidden = to_int_vec(ini.get_int_list("agent", "hidden"), "hidden");
  std::string grad = ini.get_string("agent", "actor_grad", rl::to_string(a.actor_grad));
  if (grad == "reparam")
    a.actor_grad = rl::ActorGrad::reparam;
  else if (grad == "likelihood_ratio")
    a.actor_grad = rl::ActorGrad::likelihood_ratio;
  else
    throw std::invalid_argument("config: unknown actor_grad '" + grad + "'");
  std::string residual = ini.get_string("agent", "rho_residual", rl::to_string(a.rho_residual));
  if (residual == "paper")
    a.rho_residual = rl::RhoResidual::paper;
  else if (residual == "td")
    a.rho_residual = rl::RhoResidual::td;
  else
    throw std::invalid_argument("config: unknown rho_residual '" + residual + "'");
  a.target_entropy_term = ini.get_bool("agent", "target_entropy_term", a.target_entropy_term);

  cfg.kind = experiment_kind_from(ini.get_string("experiment", "kind", to_string(cfg.kind)));
  if (ini.has("experiment", "gamma_values"))
    cfg.gamma_values = ini.get_double_list("experiment", "gamma_values");
  if (ini.has("experiment", "horizon_values"))
    cfg.horizon_values =
        to_int_vec(ini.get_int_list("experiment", "horizon_values"), "horizon_values");
  if (ini.has("experiment", "seeds")) {
    cfg.seeds.clear();
    for (long long v : ini.get_int_list("experiment", "seeds")) {
      if (v < 0) throw std::invalid_argument("config: seeds must be >= 0");
      cfg.seeds.push_back(static_cast<std::uint64_t>(v));
    }
  }
  if (ini.has("experiment", "ue_combos"))
    cfg.ue_combos = ini.get_int_vectors("experiment", "ue_combos");
  cfg.total_env_steps = ini.get_int("experiment", "total_env_steps", cfg.total_env_steps);
  cfg.out_dir = ini.get_string("experiment", "out_dir", cfg.out_dir);
  cfg.workers = static_cast<int>(ini.get_int("experiment", "workers", cfg.workers));
  cfg.final_window_fraction =
      ini.get_double("experiment", "final_window_fraction", cfg.final_window_fraction);
  cfg.compare_gamma = ini.get_double("experiment", "compare_gamma", cfg.compare_gamma);

  cfg.validate();
  return cfg;
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
  return from_ini(IniFile::parse_file(path));
}

ExperimentConfig parse_experiment_config(const std::string& text, const std::string& name) {
  return from_ini(IniFile::parse_string(text, name));
}

}  // namespace slicerl::harness
