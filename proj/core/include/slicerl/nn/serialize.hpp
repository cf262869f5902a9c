#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "slicerl/nn/mlp.hpp"

namespace slicerl::nn {

// Text checkpoint, one network per block:
//   slicerl-mlp 1
//   layers <count> <s0> <s1> ...
//   count <n>
//   <n lines of C hexfloat>
// Hexfloat round-trips bit-exactly through strtod.
void save_mlp(std::ostream& os, const MlpSpec& spec, const ParamVector& params);
std::pair<MlpSpec, ParamVector> load_mlp(std::istream& is);

void save_mlp_file(const std::string& path, const MlpSpec& spec, const ParamVector& params);
std::pair<MlpSpec, ParamVector> load_mlp_file(const std::string& path);

}  // namespace slicerl::nn
