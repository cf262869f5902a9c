// slicerl CLI: training runs, the three studies, plotting, config checks.
//
// Every experiment writes into --out: per-run CSVs, an aggregate CSV, a
// learning-curve SVG, and manifest.json keyed by the config hash.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slicerl/harness/config.hpp"
#include "slicerl/harness/experiment.hpp"
#include "slicerl/harness/manifest.hpp"
#include "slicerl/harness/plot.hpp"

namespace {

using slicerl::harness::AggregateRow;
using slicerl::harness::CompareResult;
using slicerl::harness::ExperimentConfig;
using slicerl::harness::ExperimentKind;
using slicerl::harness::RunRecord;
using slicerl::harness::RunSpec;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::vector<std::uint64_t> seeds;
  int workers = 0;  // 0 = keep config value
};

void add_common(CLI::App* cmd, CommonOpts* opts, bool multi_seed) {
  cmd->add_option("--config", opts->config_path, "experiment config file (INI sections)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opts->out_dir, "output directory (overrides config)");
  cmd->add_option("--workers", opts->workers, "parallel training runs (overrides config)")
      ->check(CLI::PositiveNumber);
  if (multi_seed) {
    cmd->add_option("--seeds", opts->seeds, "seed list (overrides config)")->delimiter(',');
  }
}

ExperimentConfig resolve_config(const CommonOpts& opts, ExperimentKind kind) {
  ExperimentConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = slicerl::harness::load_experiment_config(opts.config_path);
  }
  cfg.kind = kind;
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (!opts.seeds.empty()) cfg.seeds = opts.seeds;
  if (opts.workers > 0) cfg.workers = opts.workers;
  cfg.validate();
  return cfg;
}

std::vector<std::string> run_csv_paths(const std::vector<RunRecord>& runs) {
  std::vector<std::string> paths;
  paths.reserve(runs.size());
  for (const auto& r : runs) paths.push_back(r.csv_path);
  return paths;
}

void print_rows(const std::vector<AggregateRow>& rows, const char* metric) {
  for (const auto& row : rows) {
    if (row.n >= 2) {
      std::printf("%-14s %s = %.4f +/- %.4f  (n=%d)\n", row.label.c_str(), metric, row.mean,
                  row.ci_half, row.n);
    } else {
      std::printf("%-14s %s = %.4f  (n=%d, no CI)\n", row.label.c_str(), metric, row.mean, row.n);
    }
  }
}

void finish_experiment(const ExperimentConfig& cfg, const std::vector<RunRecord>& runs,
                       const std::vector<AggregateRow>& rows, const std::string& aggregate_name,
                       const std::string& metric_name, const CompareResult* extras) {
  namespace fs = std::filesystem;
  const fs::path out(cfg.out_dir);
  slicerl::harness::write_aggregate_csv((out / aggregate_name).string(), rows, metric_name);
  const auto plots = slicerl::harness::emit_plots(run_csv_paths(runs), cfg.out_dir);
  slicerl::harness::write_manifest((out / "manifest.json").string(), cfg, runs, rows, extras,
                                   plots);
  std::printf("wrote %s and %s under %s (config %s)\n", aggregate_name.c_str(), "manifest.json",
              cfg.out_dir.c_str(), cfg.config_hash().c_str());
}

int cmd_train(const CommonOpts& opts, std::uint64_t seed, const std::string& algo) {
  ExperimentConfig cfg = resolve_config(opts, ExperimentKind::single);
  if (algo == "sac") {
    cfg.agent.mode = slicerl::rl::Mode::discounted;
  } else if (algo == "aro-sac") {
    cfg.agent.mode = slicerl::rl::Mode::average;
  } else if (!algo.empty()) {
    throw std::invalid_argument("unknown --algo '" + algo + "' (expected sac or aro-sac)");
  }

  RunSpec spec;
  spec.label = cfg.agent.mode == slicerl::rl::Mode::average ? "aro-sac" : "sac";
  spec.sim = cfg.sim;
  spec.env = cfg.env;
  spec.agent = cfg.agent;
  spec.total_env_steps = cfg.total_env_steps;
  spec.seed = seed;
  spec.out_dir = cfg.out_dir;
  spec.write_metrics = true;

  RunRecord rec = slicerl::harness::run_single(spec, cfg.config_hash());
  slicerl::harness::summarize_final_window(rec, cfg.final_window_fraction);

  std::printf("%s seed=%llu: %zu episodes, final window cumulative=%.4f per-step=%.4f",
              rec.label.c_str(), static_cast<unsigned long long>(rec.seed), rec.episodes.size(),
              rec.final_cumulative_mean, rec.final_per_step_mean);
  if (rec.has_rho) std::printf(" rho=%.4f rho_emp=%.4f", rec.final_rho, rec.final_rho_emp);
  std::printf("\n");

  std::vector<AggregateRow> rows(1);
  rows[0].label = rec.label;
  rows[0].n = 1;
  rows[0].mean = rec.final_per_step_mean;
  const std::vector<RunRecord> runs = {rec};
  finish_experiment(cfg, runs, rows, "train_aggregate.csv", "per_step_reward", nullptr);
  return 0;
}

int cmd_sweep_gamma(const CommonOpts& opts) {
  const ExperimentConfig cfg = resolve_config(opts, ExperimentKind::gamma_sweep);
  std::vector<RunRecord> runs;
  const auto rows = slicerl::harness::sweep_gamma(cfg, &runs);
  print_rows(rows, "cumulative_reward");
  finish_experiment(cfg, runs, rows, "gamma_aggregate.csv", "cumulative_reward", nullptr);
  return 0;
}

int cmd_sweep_horizon(const CommonOpts& opts) {
  const ExperimentConfig cfg = resolve_config(opts, ExperimentKind::horizon_sweep);
  std::vector<RunRecord> runs;
  const auto rows = slicerl::harness::sweep_horizon(cfg, &runs);
  print_rows(rows, "per_step_reward");
  finish_experiment(cfg, runs, rows, "horizon_aggregate.csv", "per_step_reward", nullptr);
  return 0;
}

int cmd_compare(const CommonOpts& opts) {
  const ExperimentConfig cfg = resolve_config(opts, ExperimentKind::compare);
  const CompareResult result = slicerl::harness::compare(cfg);
  print_rows(result.rows, "per_step_reward");
  std::printf("aro-sac over discounted baseline: %+.2f%%\n", result.improvement_pct);
  std::printf("late-window variance: gamma=1 %.6g vs baseline %.6g (%s)\n", result.variance_g1,
              result.variance_g099,
              result.g1_more_variable ? "gamma=1 more variable" : "gamma=1 not more variable");
  finish_experiment(cfg, result.runs, result.rows, "compare_aggregate.csv", "per_step_reward",
                    &result);
  return 0;
}

int cmd_plot(const std::vector<std::string>& csvs, const std::string& out_dir,
             const std::string& stem) {
  const auto written = slicerl::harness::emit_plots(csvs, out_dir, stem);
  if (written.empty()) {
    std::fprintf(stderr, "slicerl plot: no plottable rows in the given CSVs\n");
    return 1;
  }
  for (const auto& p : written) std::printf("wrote %s\n", p.c_str());
  return 0;
}

int cmd_validate(const std::string& path) {
  const ExperimentConfig cfg = slicerl::harness::load_experiment_config(path);
  cfg.validate();
  std::printf("config ok: kind=%s hash=%s seeds=%zu out=%s\n",
              slicerl::harness::to_string(cfg.kind), cfg.config_hash().c_str(), cfg.seeds.size(),
              cfg.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RAN slicing RL experiments: SAC / ARO-SAC on a desk-scale slicing simulator"};
  app.require_subcommand(1);

  CommonOpts train_opts;
  std::uint64_t train_seed = 1;
  std::string train_algo;
  auto* train = app.add_subcommand("train", "single training run");
  add_common(train, &train_opts, false);
  train->add_option("--seed", train_seed, "run seed");
  train->add_option("--algo", train_algo, "sac (discounted) or aro-sac (average reward)")
      ->check(CLI::IsMember({"sac", "aro-sac"}));

  CommonOpts gamma_opts;
  auto* sweep_g = app.add_subcommand("sweep-gamma", "discounted SAC across gamma values");
  add_common(sweep_g, &gamma_opts, true);

  CommonOpts horizon_opts;
  auto* sweep_t = app.add_subcommand("sweep-horizon", "SAC at fixed gamma across horizons");
  add_common(sweep_t, &horizon_opts, true);

  CommonOpts compare_opts;
  auto* compare = app.add_subcommand("compare", "ARO-SAC vs discounted SAC on shared seeds");
  add_common(compare, &compare_opts, true);

  std::vector<std::string> plot_csvs;
  std::string plot_out = ".";
  std::string plot_stem = "curves";
  auto* plot = app.add_subcommand("plot", "learning-curve SVG from per-run CSVs");
  plot->add_option("csvs", plot_csvs, "run CSVs (grouped by stem before __seed)")
      ->required()
      ->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "output directory");
  plot->add_option("--stem", plot_stem, "output file stem");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate-config", "parse a config and print its hash");
  validate->add_option("--config", validate_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return cmd_train(train_opts, train_seed, train_algo);
    if (sweep_g->parsed()) return cmd_sweep_gamma(gamma_opts);
    if (sweep_t->parsed()) return cmd_sweep_horizon(horizon_opts);
    if (compare->parsed()) return cmd_compare(compare_opts);
    if (plot->parsed()) return cmd_plot(plot_csvs, plot_out, plot_stem);
    if (validate->parsed()) return cmd_validate(validate_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "slicerl: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
