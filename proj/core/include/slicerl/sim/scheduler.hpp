#pragma once

#include <span>
#include <vector>

#include "slicerl/sim/types.hpp"

namespace slicerl::sim {

// One schedulable UE as the scheduler sees it within a subframe.
struct PfCandidate {
  double link_rate = 0;   // bits per RBG per subframe
  double ewma = 1;        // bit/s, floored positive
  double backlog_bits = 0;
};

// Core per-RBG proportional-fair loop. Assigns up to `budget` RBGs, one at a
// time, each to the candidate with the highest link_rate / ewma whose backlog
// exceeds the bits already planned for it this subframe (ties to the lowest
// index). `planned_bits[i]` carries capacity promised to candidate i so far
// and is updated in place. Returns the chosen candidate index per RBG; may be
// shorter than budget when nobody is backlogged.
std::vector<int> pf_assign(std::span<const PfCandidate> candidates, int budget,
                           std::vector<double>& planned_bits);

// Intra-slice PF over a fresh subframe (no capacity planned yet).
std::vector<int> pf_schedule(std::span<const PfCandidate> slice_ues, int rbg_budget);

// Soft slicing: leftover RBGs are re-offered across the pooled candidate set
// under the same PF rule. `planned_bits` carries what the primary pass
// already promised to each pooled candidate.
std::vector<int> soft_slicing_redistribute(std::span<const PfCandidate> pooled, int unused_rbgs,
                                           std::vector<double>& planned_bits);

}  // namespace slicerl::sim
