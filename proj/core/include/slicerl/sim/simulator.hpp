#pragma once

#include <cstdint>
#include <vector>

#include "slicerl/common/rng.hpp"
#include "slicerl/sim/types.hpp"

namespace slicerl::sim {

// Discrete-event downlink world over one cell. Each step() advances one
// control interval: Poisson arrivals, random-waypoint movement, per-subframe
// PF scheduling inside slice quotas with soft-slicing reuse of leftovers,
// queue draining with per-packet delay accounting, and PF EWMA updates.
//
// Single-threaded; all randomness flows from the instance RNG, and none of it
// depends on the allocation sequence, so two instances with the same config
// and seed see identical arrival and mobility streams regardless of actions.
class Simulator {
 public:
  Simulator(SimConfig cfg, std::uint64_t seed);

  void reset(std::uint64_t seed);

  // allocation: RBGs granted per slice this interval; sum must be <= num_rbgs.
  std::vector<SliceMetrics> step(const std::vector<int>& allocation);

  const SimConfig& config() const { return cfg_; }
  const std::vector<UeState>& ues() const { return ues_; }
  double now() const { return static_cast<double>(intervals_elapsed_) * cfg_.control_interval; }
  std::int64_t intervals_elapsed() const { return intervals_elapsed_; }

  struct Audit {
    std::int64_t subframes = 0;
    int max_rbgs_in_subframe = 0;
    std::int64_t double_assignments = 0;  // stays 0; counted via per-RBG ownership stamps
  };
  const Audit& audit() const { return audit_; }

  // FNV hash over the full dynamic state; equal seeds give equal digests.
  std::uint64_t state_digest() const;

 private:
  SimConfig cfg_;
  Rng rng_;
  std::vector<UeState> ues_;
  std::vector<int> slice_start_;  // index of first UE per slice
  std::int64_t intervals_elapsed_ = 0;
  Audit audit_;

  // per-interval scratch
  std::vector<std::vector<Packet>> pending_;
  std::vector<std::size_t> pending_cursor_;
  std::vector<int> rbg_count_;        // RBGs assigned to each UE this subframe
  std::vector<double> planned_bits_;  // capacity promised per UE this subframe
  std::vector<int> rbg_owner_stamp_;  // subframe stamp per RBG id
  std::int64_t subframe_stamp_ = 0;

  void place_ue(UeState& ue);
  void advance_waypoint(UeState& ue, double dt);
  void run_subframe(const std::vector<int>& allocation, double sf_start, double sf_end,
                    std::vector<std::int64_t>& own_used, std::vector<std::int64_t>& total_used);
};

}  // namespace slicerl::sim
