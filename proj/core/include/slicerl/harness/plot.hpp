#pragma once

#include <string>
#include <vector>

namespace slicerl::harness {

// One plotted setting: cross-seed mean and 95% CI half-width per point.
// ci_half is all zeros when the group holds a single run.
struct CurveSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> ci_half;
  int n_runs = 0;
};

// Groups run CSVs by their file stem before "__seed", reading env_step and
// avg_reward_per_step. Runs without data rows are skipped with a warning on
// stderr; runs inside a group are truncated to the shortest run's length.
std::vector<CurveSeries> collect_curves(const std::vector<std::string>& run_csvs);

// Self-contained SVG: labeled axes, one mean line per series, translucent CI
// band where n_runs >= 2, legend.
void write_curve_svg(const std::string& path, const std::vector<CurveSeries>& curves,
                     const std::string& x_label, const std::string& y_label);

// collect + write into <out_dir>/<stem>.svg. Returns the written paths
// (empty when no run had data).
std::vector<std::string> emit_plots(const std::vector<std::string>& run_csvs,
                                    const std::string& out_dir,
                                    const std::string& stem = "curves");

}  // namespace slicerl::harness
