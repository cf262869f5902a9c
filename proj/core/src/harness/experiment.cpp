#include "slicerl/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "slicerl/common/csv.hpp"
#include "slicerl/common/stats.hpp"
#include "slicerl/harness/pool.hpp"

namespace slicerl::harness {

std::string sanitize_label(const std::string& label) {
  std::string out = label;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-' && c != '_')
      c = '_';
  return out;
}

std::string RunSpec::csv_path() const {
  return out_dir + "/" + sanitize_label(label) + "__seed" + std::to_string(seed) + ".csv";
}

void summarize_final_window(RunRecord& record, double fraction) {
  size_t n = record.episodes.size();
  if (n == 0) return;
  size_t w = std::max<size_t>(1, static_cast<size_t>(std::floor(fraction * static_cast<double>(n))));
  if (w > n) w = n;
  double cum = 0, per_step = 0, rho = 0, rho_emp = 0;
  for (size_t i = n - w; i < n; ++i) {
    cum += record.episodes[i].cumulative_reward;
    per_step += record.episodes[i].avg_reward_per_step;
    rho += record.episodes[i].rho;
    rho_emp += record.episodes[i].rho_emp;
  }
  record.final_cumulative_mean = cum / static_cast<double>(w);
  record.final_per_step_mean = per_step / static_cast<double>(w);
  record.has_rho = record.episodes.back().has_rho;
  record.final_rho = record.has_rho ? rho / static_cast<double>(w) : 0.0;
  record.final_rho_emp = rho_emp / static_cast<double>(w);
}

RunRecord run_single(const RunSpec& spec, const std::string& config_hash) {
  std::filesystem::create_directories(spec.out_dir);

  env::Environment world(spec.sim, spec.env, derive_seed(spec.seed, 10));
  rl::TrainSchedule schedule;
  schedule.total_env_steps = spec.total_env_steps;
  schedule.log_path = spec.csv_path();
  if (spec.write_metrics) {
    std::string stem = schedule.log_path.substr(0, schedule.log_path.size() - 4);
    schedule.metrics_path = stem + "_metrics.csv";
  }
  rl::TrainResult result = rl::train(world, spec.agent, schedule, derive_seed(spec.seed, 20));

  RunRecord record;
  record.label = spec.label;
  record.seed = spec.seed;
  record.config_hash = config_hash;
  record.csv_path = schedule.log_path;
  record.episodes = std::move(result.episodes);
  summarize_final_window(record, 0.1);
  return record;
}

namespace {

// Runs |specs| in parallel and summarizes with the configured window.
std::vector<RunRecord> run_all(const ExperimentConfig& cfg, const std::vector<RunSpec>& specs) {
  std::vector<RunRecord> records(specs.size());
  std::string hash = cfg.config_hash();
  run_parallel(cfg.workers, static_cast<int>(specs.size()), [&](int i) {
    records[static_cast<size_t>(i)] = run_single(specs[static_cast<size_t>(i)], hash);
    summarize_final_window(records[static_cast<size_t>(i)], cfg.final_window_fraction);
  });
  return records;
}

AggregateRow aggregate(const std::string& label, const std::vector<double>& values) {
  AggregateRow row;
  row.label = label;
  row.n = static_cast<int>(values.size());
  row.mean = mean(values);
  if (row.n >= 2) {
    row.ci_half = ci95_half_width(values);
    row.variance = sample_variance(values);
  }
  return row;
}

RunSpec base_spec(const ExperimentConfig& cfg) {
  RunSpec spec;
  spec.sim = cfg.sim;
  spec.env = cfg.env;
  spec.agent = cfg.agent;
  spec.total_env_steps = cfg.total_env_steps;
  spec.out_dir = cfg.out_dir;
  return spec;
}

}  // namespace

std::vector<AggregateRow> sweep_gamma(const ExperimentConfig& cfg,
                                      std::vector<RunRecord>* runs_out) {
  std::vector<RunSpec> specs;
  for (double gamma : cfg.gamma_values) {
    for (std::uint64_t seed : cfg.seeds) {
      RunSpec spec = base_spec(cfg);
      spec.label = "gamma_" + fmt_double(gamma);
      spec.agent.mode = rl::Mode::discounted;
      spec.agent.gamma = gamma;
      spec.seed = seed;
      specs.push_back(std::move(spec));
    }
  }
  std::vector<RunRecord> records = run_all(cfg, specs);

  std::vector<AggregateRow> rows;
  size_t idx = 0;
  for (double gamma : cfg.gamma_values) {
    std::vector<double> values;
    for (size_t k = 0; k < cfg.seeds.size(); ++k)
      values.push_back(records[idx + k].final_cumulative_mean);
    rows.push_back(aggregate("gamma_" + fmt_double(gamma), values));
    idx += cfg.seeds.size();
  }
  if (runs_out) *runs_out = std::move(records);
  return rows;
}

std::vector<AggregateRow> sweep_horizon(const ExperimentConfig& cfg,
                                        std::vector<RunRecord>* runs_out) {
  std::vector<RunSpec> specs;
  for (int horizon : cfg.horizon_values) {
    for (std::uint64_t seed : cfg.seeds) {
      RunSpec spec = base_spec(cfg);
      spec.label = "T_" + std::to_string(horizon);
      spec.agent.mode = rl::Mode::discounted;
      spec.env.horizon = horizon;
      spec.seed = seed;
      specs.push_back(std::move(spec));
    }
  }
  std::vector<RunRecord> records = run_all(cfg, specs);

  std::vector<AggregateRow> rows;
  size_t idx = 0;
  for (int horizon : cfg.horizon_values) {
    std::vector<double> values;
    for (size_t k = 0; k < cfg.seeds.size(); ++k)
      values.push_back(records[idx + k].final_per_step_mean);
    rows.push_back(aggregate("T_" + std::to_string(horizon), values));
    idx += cfg.seeds.size();
  }
  if (runs_out) *runs_out = std::move(records);
  return rows;
}

CompareResult compare(const ExperimentConfig& cfg) {
  if (cfg.ue_combos.size() != cfg.seeds.size())
    throw std::invalid_argument("compare: seeds and ue_combos must pair up");

  struct Arm {
    std::string label;
    rl::Mode mode;
    double gamma;
  };
  std::vector<Arm> arms = {
      {"aro-sac", rl::Mode::average, cfg.agent.gamma},
      {"sac_g" + fmt_double(cfg.compare_gamma), rl::Mode::discounted, cfg.compare_gamma},
      {"sac_g1", rl::Mode::discounted, 1.0},
  };

  std::vector<RunSpec> specs;
  for (const Arm& arm : arms) {
    for (size_t k = 0; k < cfg.seeds.size(); ++k) {
      RunSpec spec = base_spec(cfg);
      spec.label = arm.label;
      spec.agent.mode = arm.mode;
      spec.agent.gamma = arm.gamma;
      spec.sim.ues_per_slice = cfg.ue_combos[k];  // paired with the seed
      spec.seed = cfg.seeds[k];
      specs.push_back(std::move(spec));
    }
  }
  std::vector<RunRecord> records = run_all(cfg, specs);

  CompareResult result;
  size_t idx = 0;
  for (const Arm& arm : arms) {
    std::vector<double> values;
    for (size_t k = 0; k < cfg.seeds.size(); ++k)
      values.push_back(records[idx + k].final_per_step_mean);
    result.rows.push_back(aggregate(arm.label, values));
    idx += cfg.seeds.size();
  }
  double aro = result.rows[0].mean;
  double sac = result.rows[1].mean;
  result.improvement_pct = sac == 0 ? 0 : 100.0 * (aro - sac) / std::abs(sac);
  result.variance_g099 = result.rows[1].variance;
  result.variance_g1 = result.rows[2].variance;
  result.g1_more_variable = result.variance_g1 >= result.variance_g099;
  result.runs = std::move(records);
  return result;
}

void write_aggregate_csv(const std::string& path, const std::vector<AggregateRow>& rows,
                         const std::string& metric_name) {
  CsvWriter out(path);
  out.header({"setting", "n", "mean_" + metric_name, "ci95_half", "variance"});
  for (const AggregateRow& row : rows)
    out.row({row.label, std::to_string(row.n), fmt_double(row.mean), fmt_double(row.ci_half),
             fmt_double(row.variance)});
  out.close();
}

}  // namespace slicerl::harness
