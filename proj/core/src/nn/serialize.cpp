#include "slicerl/nn/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slicerl::nn {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("mlp checkpoint: " + what);
}

std::string next_line(std::istream& is, const char* what) {
  std::string line;
  if (!std::getline(is, line)) fail(std::string("truncated, expected ") + what);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

void save_mlp(std::ostream& os, const MlpSpec& spec, const ParamVector& params) {
  spec.validate();
  Layout layout = Layout::from_spec(spec);
  if (static_cast<int>(params.size()) != layout.total)
    fail("params length does not match spec");
  os << "slicerl-mlp 1\n";
  os << "layers " << spec.layer_sizes.size();
  for (int s : spec.layer_sizes) os << ' ' << s;
  os << '\n';
  os << "count " << params.size() << '\n';
  char buf[64];
  for (double v : params) {
    std::snprintf(buf, sizeof(buf), "%a", v);
    os << buf << '\n';
  }
  if (!os) fail("write failure");
}

std::pair<MlpSpec, ParamVector> load_mlp(std::istream& is) {
  if (next_line(is, "magic") != "slicerl-mlp 1") fail("bad magic");

  std::istringstream hdr(next_line(is, "layers"));
  std::string tag;
  size_t n_layers = 0;
  if (!(hdr >> tag >> n_layers) || tag != "layers" || n_layers < 2) fail("bad layers line");
  MlpSpec spec;
  spec.layer_sizes.resize(n_layers);
  for (size_t i = 0; i < n_layers; ++i)
    if (!(hdr >> spec.layer_sizes[i])) fail("bad layers line");
  spec.validate();

  std::istringstream cnt(next_line(is, "count"));
  size_t n = 0;
  if (!(cnt >> tag >> n) || tag != "count") fail("bad count line");
  Layout layout = Layout::from_spec(spec);
  if (static_cast<int>(n) != layout.total) fail("count does not match layers");

  ParamVector params(n);
  for (size_t i = 0; i < n; ++i) {
    std::string line = next_line(is, "value");
    char* end = nullptr;
    params[i] = std::strtod(line.c_str(), &end);
    if (end == line.c_str()) fail("unparseable value at index " + std::to_string(i));
  }
  return {std::move(spec), std::move(params)};
}

void save_mlp_file(const std::string& path, const MlpSpec& spec, const ParamVector& params) {
  std::ofstream os(path);
  if (!os) fail("cannot open " + path + " for writing");
  save_mlp(os, spec, params);
}

std::pair<MlpSpec, ParamVector> load_mlp_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail("cannot open " + path);
  return load_mlp(is);
}

}  // namespace slicerl::nn
