#pragma once

#include <span>
#include <stdexcept>

namespace slicerl::rl {

// On-policy empirical average-reward estimate: EWMA over per-episode mean
// rewards. Diagnostic only; never feeds training.
struct RateTracker {
  double mix = 0.05;
  double value = 0;

  void update(std::span<const double> episode_rewards) {
    if (episode_rewards.empty())
      throw std::invalid_argument("RateTracker: empty reward list");
    double mean = 0;
    for (double r : episode_rewards) mean += r;
    mean /= static_cast<double>(episode_rewards.size());
    value = (1.0 - mix) * value + mix * mean;
  }
};

}  // namespace slicerl::rl
