#pragma once

#include <vector>

#include "slicerl/common/rng.hpp"
#include "slicerl/sim/types.hpp"

namespace slicerl::sim {

// Poisson arrival batch for one interval: count ~ Poisson(rate * dt), arrival
// times uniform in [t0, t0 + dt) and sorted, every packet `packet_size` bits.
// rate == 0 yields an empty batch.
std::vector<Packet> poisson_arrivals(double rate, double dt, double t0, double packet_size,
                                     Rng& rng);

}  // namespace slicerl::sim
