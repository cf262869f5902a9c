#pragma once

#include "slicerl/sim/types.hpp"

namespace slicerl::sim {

// Base-station anchor: the area center.
inline Vec2 base_station(const SimConfig& cfg) { return {cfg.area_x / 2.0, cfg.area_y / 2.0}; }

double distance_to_base(const Vec2& pos, const SimConfig& cfg);

// Deterministic downlink rate in bits per RBG per subframe. Log-distance
// pathloss from the anchor (distance clamped at ref_distance) into a Shannon
// rate over the RBG bandwidth. Nonincreasing in distance, strictly positive.
double link_rate(const Vec2& pos, const SimConfig& cfg);

}  // namespace slicerl::sim
