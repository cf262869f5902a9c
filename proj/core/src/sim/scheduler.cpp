#include "slicerl/sim/scheduler.hpp"

#include <stdexcept>

namespace slicerl::sim {

std::vector<int> pf_assign(std::span<const PfCandidate> candidates, int budget,
                           std::vector<double>& planned_bits) {
  if (budget < 0) throw std::invalid_argument("pf_assign: budget must be >= 0");
  if (planned_bits.size() != candidates.size())
    throw std::invalid_argument("pf_assign: planned_bits size mismatch");
  std::vector<int> assignment;
  assignment.reserve(static_cast<size_t>(budget));
  for (int r = 0; r < budget; ++r) {
    int best = -1;
    double best_priority = 0;
    for (size_t i = 0; i < candidates.size(); ++i) {
      const PfCandidate& c = candidates[i];
      if (c.backlog_bits <= planned_bits[i]) continue;
      double priority = c.link_rate / c.ewma;
      if (best < 0 || priority > best_priority) {
        best = static_cast<int>(i);
        best_priority = priority;
      }
    }
    if (best < 0) break;  // nobody backlogged
    assignment.push_back(best);
    planned_bits[static_cast<size_t>(best)] += candidates[static_cast<size_t>(best)].link_rate;
  }
  return assignment;
}

std::vector<int> pf_schedule(std::span<const PfCandidate> slice_ues, int rbg_budget) {
  std::vector<double> planned(slice_ues.size(), 0.0);
  return pf_assign(slice_ues, rbg_budget, planned);
}

std::vector<int> soft_slicing_redistribute(std::span<const PfCandidate> pooled, int unused_rbgs,
                                           std::vector<double>& planned_bits) {
  return pf_assign(pooled, unused_rbgs, planned_bits);
}

}  // namespace slicerl::sim
