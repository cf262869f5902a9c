#include "slicerl/harness/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace slicerl::harness {

void write_manifest(const std::string& path, const ExperimentConfig& cfg,
                    const std::vector<RunRecord>& runs, const std::vector<AggregateRow>& rows,
                    const CompareResult* compare_extras, const std::vector<std::string>& plots) {
  nlohmann::json doc;
  doc["format"] = "slicerl-manifest 1";
  doc["tool"] = "slicerl 0.1.0";
  doc["experiment"] = to_string(cfg.kind);
  doc["config_hash"] = cfg.config_hash();
  doc["seeds"] = cfg.seeds;
  doc["total_env_steps"] = cfg.total_env_steps;

  nlohmann::json run_list = nlohmann::json::array();
  for (const RunRecord& run : runs) {
    nlohmann::json r;
    r["label"] = run.label;
    r["seed"] = run.seed;
    r["csv"] = run.csv_path;
    r["episodes"] = run.episodes.size();
    r["final_cumulative_mean"] = run.final_cumulative_mean;
    r["final_per_step_mean"] = run.final_per_step_mean;
    if (run.has_rho) {
      r["final_rho"] = run.final_rho;
      r["final_rho_emp"] = run.final_rho_emp;
    }
    run_list.push_back(std::move(r));
  }
  doc["runs"] = std::move(run_list);

  nlohmann::json agg = nlohmann::json::array();
  for (const AggregateRow& row : rows) {
    nlohmann::json r;
    r["setting"] = row.label;
    r["n"] = row.n;
    r["mean"] = row.mean;
    r["ci95_half"] = row.ci_half;
    r["variance"] = row.variance;
    agg.push_back(std::move(r));
  }
  doc["aggregates"] = std::move(agg);

  if (compare_extras) {
    doc["improvement_pct"] = compare_extras->improvement_pct;
    doc["improvement_reference_pct"] = 15.0;
    doc["variance_gamma1"] = compare_extras->variance_g1;
    doc["variance_gamma099"] = compare_extras->variance_g099;
    doc["gamma1_more_variable"] = compare_extras->g1_more_variable;
  }
  if (!plots.empty()) doc["plots"] = plots;

  std::ofstream os(path);
  if (!os) throw std::runtime_error("manifest: cannot open " + path);
  os << doc.dump(2) << '\n';
  if (!os) throw std::runtime_error("manifest: write failure on " + path);
}

}  // namespace slicerl::harness
