#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slicerl/harness/config.hpp"
#include "slicerl/rl/trainer.hpp"

namespace slicerl::harness {

// One fully resolved training run: a setting label plus every knob the run
// needs. Runs with equal specs produce byte-identical artifacts.
struct RunSpec {
  std::string label;  // e.g. "gamma_0.9", "aro-sac"; file stem is label__seed<k>
  sim::SimConfig sim;
  env::EnvConfig env;
  rl::AgentConfig agent;
  std::int64_t total_env_steps = 0;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool write_metrics = false;

  std::string csv_path() const;
};

struct RunRecord {
  std::string label;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string csv_path;
  std::vector<rl::EpisodeLog> episodes;
  // Final window = last max(1, floor(fraction * episodes)) episodes.
  double final_cumulative_mean = 0;
  double final_per_step_mean = 0;
  double final_rho = 0;
  bool has_rho = false;
  double final_rho_emp = 0;
};

struct AggregateRow {
  std::string label;
  int n = 0;
  double mean = 0;       // across seeds, of the per-run final-window metric
  double ci_half = 0;    // 95% Student-t half-width; 0 when n < 2
  double variance = 0;   // across seeds; 0 when n < 2
};

struct CompareResult {
  std::vector<AggregateRow> rows;  // aro-sac, sac_g<gamma>, sac_g1
  double improvement_pct = 0;      // aro-sac over the discounted baseline
  double variance_g1 = 0;          // late-window cross-seed variance diagnostics
  double variance_g099 = 0;
  bool g1_more_variable = false;
  std::vector<RunRecord> runs;
};

// Summary of the last `fraction` of a run's episodes.
void summarize_final_window(RunRecord& record, double fraction);

// Trains one run, writes <out_dir>/<label>__seed<seed>.csv, returns the
// record. Deterministic per spec.
RunRecord run_single(const RunSpec& spec, const std::string& config_hash);

// Discounted SAC per (gamma, seed); aggregates final-window cumulative
// episode reward per gamma. Returns rows in gamma_values order.
std::vector<AggregateRow> sweep_gamma(const ExperimentConfig& cfg,
                                      std::vector<RunRecord>* runs_out = nullptr);

// SAC at fixed gamma across horizon_values; aggregates final-window
// per-step average reward per horizon.
std::vector<AggregateRow> sweep_horizon(const ExperimentConfig& cfg,
                                        std::vector<RunRecord>* runs_out = nullptr);

// Three arms on identical seeds and paired UE-count combinations:
// aro-sac, sac at compare_gamma, and the sac gamma=1 instability probe.
CompareResult compare(const ExperimentConfig& cfg);

// Shared helpers for the CLI layer.
std::string sanitize_label(const std::string& label);
void write_aggregate_csv(const std::string& path, const std::vector<AggregateRow>& rows,
                         const std::string& metric_name);

}  // namespace slicerl::harness
