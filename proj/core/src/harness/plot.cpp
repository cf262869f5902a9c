#include "slicerl/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "slicerl/common/csv.hpp"
#include "slicerl/common/stats.hpp"

namespace slicerl::harness {

namespace {

std::string group_key(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  size_t pos = stem.rfind("__seed");
  return pos == std::string::npos ? stem : stem.substr(0, pos);
}

struct RawRun {
  std::vector<double> x;
  std::vector<double> y;
};

double parse_cell(const std::string& cell, const std::string& path) {
  char* end = nullptr;
  double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str()) throw std::runtime_error(path + ": unparseable numeric cell '" + cell + "'");
  return v;
}

// Round up to a 1/2/5 * 10^k step size.
double nice_step(double span, int target_ticks) {
  if (span <= 0) return 1;
  double raw = span / target_ticks;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10 * mag;
}

std::string fmt_tick(double v) {
  char buf[32];
  if (v != 0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-3))
    std::snprintf(buf, sizeof(buf), "%.1e", v);
  else
    std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::vector<CurveSeries> collect_curves(const std::vector<std::string>& run_csvs) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<RawRun>> groups;
  for (const std::string& path : run_csvs) {
    CsvTable table = read_csv(path);
    int cx = table.column("env_step");
    int cy = table.column("avg_reward_per_step");
    if (cx < 0 || cy < 0)
      throw std::runtime_error(path + ": missing env_step/avg_reward_per_step columns");
    if (table.rows.empty()) {
      std::fprintf(stderr, "plot: %s has no data rows, skipping\n", path.c_str());
      continue;
    }
    RawRun run;
    for (const auto& row : table.rows) {
      run.x.push_back(parse_cell(row[static_cast<size_t>(cx)], path));
      run.y.push_back(parse_cell(row[static_cast<size_t>(cy)], path));
    }
    std::string key = group_key(path);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(std::move(run));
  }

  std::vector<CurveSeries> curves;
  for (const std::string& key : order) {
    const std::vector<RawRun>& runs = groups[key];
    size_t len = runs.front().x.size();
    for (const RawRun& r : runs) len = std::min(len, r.x.size());
    CurveSeries series;
    series.label = key;
    series.n_runs = static_cast<int>(runs.size());
    for (size_t i = 0; i < len; ++i) {
      std::vector<double> ys;
      ys.reserve(runs.size());
      for (const RawRun& r : runs) ys.push_back(r.y[i]);
      series.x.push_back(runs.front().x[i]);
      series.mean.push_back(mean(ys));
      series.ci_half.push_back(runs.size() >= 2 ? ci95_half_width(ys) : 0.0);
    }
    curves.push_back(std::move(series));
  }
  return curves;
}

void write_curve_svg(const std::string& path, const std::vector<CurveSeries>& curves,
                     const std::string& x_label, const std::string& y_label) {
  if (curves.empty()) throw std::invalid_argument("write_curve_svg: no curves");

  double xmin = curves[0].x.front(), xmax = xmin;
  double ymin = 0, ymax = 0;
  bool first = true;
  for (const CurveSeries& c : curves) {
    for (size_t i = 0; i < c.x.size(); ++i) {
      double lo = c.mean[i] - c.ci_half[i];
      double hi = c.mean[i] + c.ci_half[i];
      if (first) {
        xmin = xmax = c.x[i];
        ymin = lo;
        ymax = hi;
        first = false;
      }
      xmin = std::min(xmin, c.x[i]);
      xmax = std::max(xmax, c.x[i]);
      ymin = std::min(ymin, lo);
      ymax = std::max(ymax, hi);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double width = 860, height = 520;
  const double ml = 80, mr = 24, mt = 28, mb = 64;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_curve_svg: cannot open " + path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // grid + ticks
  os << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
  double xstep = nice_step(xmax - xmin, 6);
  for (double t = std::ceil(xmin / xstep) * xstep; t <= xmax + 1e-9; t += xstep) {
    double px = sx(t);
    os << "<line x1=\"" << px << "\" y1=\"" << mt << "\" x2=\"" << px << "\" y2=\"" << mt + ph
       << "\" stroke=\"#e5e5e5\"/>\n";
    os << "<text x=\"" << px << "\" y=\"" << mt + ph + 18 << "\" text-anchor=\"middle\">"
       << fmt_tick(t) << "</text>\n";
  }
  double ystep = nice_step(ymax - ymin, 6);
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-9; t += ystep) {
    double py = sy(t);
    os << "<line x1=\"" << ml << "\" y1=\"" << py << "\" x2=\"" << ml + pw << "\" y2=\"" << py
       << "\" stroke=\"#e5e5e5\"/>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">" << fmt_tick(t)
       << "</text>\n";
  }
  os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
     << mt + ph << "\" stroke=\"#333\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
     << "\" stroke=\"#333\"/>\n";
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 16
     << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label << "</text>\n";
  os << "<text x=\"18\" y=\"" << mt + ph / 2
     << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 " << mt + ph / 2
     << ")\">" << y_label << "</text>\n";
  os << "</g>\n";

  for (size_t c = 0; c < curves.size(); ++c) {
    const CurveSeries& s = curves[c];
    const char* color = kPalette[c % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (s.n_runs >= 2) {
      os << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
      for (size_t i = 0; i < s.x.size(); ++i)
        os << sx(s.x[i]) << ',' << sy(s.mean[i] + s.ci_half[i]) << ' ';
      for (size_t i = s.x.size(); i-- > 0;)
        os << sx(s.x[i]) << ',' << sy(s.mean[i] - s.ci_half[i]) << ' ';
      os << "\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) os << sx(s.x[i]) << ',' << sy(s.mean[i]) << ' ';
    os << "\"/>\n";
  }

  // legend
  double lx = ml + pw - 180, ly = mt + 12;
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (size_t c = 0; c < curves.size(); ++c) {
    const char* color = kPalette[c % (sizeof(kPalette) / sizeof(kPalette[0]))];
    double y = ly + static_cast<double>(c) * 18;
    os << "<line x1=\"" << lx << "\" y1=\"" << y << "\" x2=\"" << lx + 24 << "\" y2=\"" << y
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << lx + 30 << "\" y=\"" << y + 4 << "\">" << curves[c].label << " (n="
       << curves[c].n_runs << ")</text>\n";
  }
  os << "</g>\n</svg>\n";
  if (!os) throw std::runtime_error("write_curve_svg: write failure on " + path);
}

std::vector<std::string> emit_plots(const std::vector<std::string>& run_csvs,
                                    const std::string& out_dir, const std::string& stem) {
  std::vector<CurveSeries> curves = collect_curves(run_csvs);
  if (curves.empty()) {
    std::fprintf(stderr, "plot: no runs with data, nothing to draw\n");
    return {};
  }
  std::filesystem::create_directories(out_dir);
  std::string path = out_dir + "/" + stem + ".svg";
  write_curve_svg(path, curves, "environment steps", "average reward per step");
  return {path};
}

}  // namespace slicerl::harness
