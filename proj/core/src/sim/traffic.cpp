#include "slicerl/sim/traffic.hpp"

#include <algorithm>
#include <stdexcept>

namespace slicerl::sim {

std::vector<Packet> poisson_arrivals(double rate, double dt, double t0, double packet_size,
                                     Rng& rng) {
  if (rate < 0) throw std::invalid_argument("poisson_arrivals: rate must be >= 0");
  if (dt <= 0) throw std::invalid_argument("poisson_arrivals: dt must be > 0");
  if (rate == 0) return {};
  std::poisson_distribution<int> count_dist(rate * dt);
  int n = count_dist(rng);
  std::uniform_real_distribution<double> time_dist(0.0, dt);
  std::vector<Packet> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(Packet{t0 + time_dist(rng), packet_size});
  std::sort(out.begin(), out.end(),
            [](const Packet& a, const Packet& b) { return a.arrival_time < b.arrival_time; });
  return out;
}

}  // namespace slicerl::sim
