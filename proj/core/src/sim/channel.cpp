#include "slicerl/sim/channel.hpp"

#include <cmath>

namespace slicerl::sim {

double distance_to_base(const Vec2& pos, const SimConfig& cfg) {
  Vec2 bs = base_station(cfg);
  return std::hypot(pos.x - bs.x, pos.y - bs.y);
}

double link_rate(const Vec2& pos, const SimConfig& cfg) {
  double d = std::max(distance_to_base(pos, cfg), cfg.ref_distance);
  double snr_db = cfg.snr_ref_db - 10.0 * cfg.pathloss_exponent * std::log10(d / cfg.ref_distance);
  double snr = std::pow(10.0, snr_db / 10.0);
  return cfg.rbg_bandwidth * cfg.subframe_duration() * std::log2(1.0 + snr);
}

}  // namespace slicerl::sim
