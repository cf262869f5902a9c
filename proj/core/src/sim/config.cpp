#include "slicerl/sim/types.hpp"

#include <stdexcept>
#include <string>

namespace slicerl::sim {

void SimConfig::validate() const {
  auto bad = [](const std::string& msg) { throw std::invalid_argument("SimConfig: " + msg); };
  if (num_slices < 1) bad("num_slices must be >= 1");
  if (num_rbgs < 1) bad("num_rbgs must be >= 1");
  if (static_cast<int>(ues_per_slice.size()) != num_slices)
    bad("ues_per_slice has length " + std::to_string(ues_per_slice.size()) + ", expected " +
        std::to_string(num_slices));
  for (int n : ues_per_slice)
    if (n < 1) bad("each ues_per_slice entry must be >= 1");
  if (offered_load_per_ue < 0) bad("offered_load_per_ue must be >= 0");
  if (delay_threshold <= 0) bad("delay_threshold must be > 0");
  if (area_x <= 0 || area_y <= 0) bad("area dimensions must be > 0");
  if (speed_min <= 0 || speed_max < speed_min) bad("need 0 < speed_min <= speed_max");
  if (control_interval <= 0) bad("control_interval must be > 0");
  if (subframes_per_interval < 1) bad("subframes_per_interval must be >= 1");
  if (packet_size <= 0) bad("packet_size must be > 0");
  if (rbg_bandwidth <= 0) bad("rbg_bandwidth must be > 0");
  if (ref_distance <= 0) bad("ref_distance must be > 0");
  if (pathloss_exponent < 0) bad("pathloss_exponent must be >= 0");
  if (ewma_beta <= 0 || ewma_beta > 1) bad("ewma_beta must be in (0, 1]");
  if (ewma_floor <= 0) bad("ewma_floor must be > 0");
  if (drop_age_factor <= 1) bad("drop_age_factor must be > 1");
}

int SimConfig::total_ues() const {
  int n = 0;
  for (int u : ues_per_slice) n += u;
  return n;
}

}  // namespace slicerl::sim
