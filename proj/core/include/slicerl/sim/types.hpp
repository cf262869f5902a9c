#pragma once

#include <cstdint>
#include <deque>
#include <vector>

namespace slicerl::sim {

struct Vec2 {
  double x = 0;
  double y = 0;
};

// World parameters for one simulator instance. Defaults give the 3-slice,
// 25-RBG downlink cell used throughout: 100 ms control interval split into
// 100 subframes of 1 ms, Poisson packet traffic at 2 Mbit/s per UE, and a
// log-distance pathloss channel anchored at the area center.
struct SimConfig {
  int num_slices = 3;
  int num_rbgs = 25;
  std::vector<int> ues_per_slice = {6, 13, 20};
  double offered_load_per_ue = 2e6;  // bit/s
  double delay_threshold = 0.1;      // s
  double area_x = 120.0;             // m
  double area_y = 10.0;              // m
  double speed_min = 1.0;            // m/s
  double speed_max = 2.0;            // m/s
  double control_interval = 0.1;     // s
  int subframes_per_interval = 100;
  double packet_size = 5000;  // bits

  // Link model: snr_db(d) = snr_ref_db - 10 * pathloss_exponent * log10(d / ref_distance),
  // rate per RBG per subframe = rbg_bandwidth * subframe * log2(1 + snr).
  double rbg_bandwidth = 1e6;  // Hz
  double snr_ref_db = 38.0;
  double pathloss_exponent = 2.0;
  double ref_distance = 1.0;  // m

  // Proportional-fair bookkeeping.
  double ewma_beta = 0.1;    // per-subframe mixing
  double ewma_floor = 1e3;   // bit/s
  double drop_age_factor = 10.0;  // drop packets older than factor * delay_threshold

  void validate() const;  // throws std::invalid_argument

  double subframe_duration() const { return control_interval / subframes_per_interval; }
  double arrival_rate_pkts() const { return offered_load_per_ue / packet_size; }  // pkt/s per UE
  int total_ues() const;
};

struct Packet {
  double arrival_time = 0;    // s, absolute
  double size_remaining = 0;  // bits
};

// Per-control-interval packet accounting. `delivered` counts fully drained
// packets, `violated` those delivered past the delay threshold, `dropped`
// those discarded after aging out (each dropped packet also counts as a
// violation in the slice metrics).
struct IntervalCounters {
  std::int64_t arrived = 0;
  std::int64_t delivered = 0;
  std::int64_t violated = 0;
  std::int64_t dropped = 0;
  double delay_sum = 0;  // over delivered packets

  void reset() { *this = IntervalCounters{}; }
};

struct UeState {
  int slice_id = 0;
  Vec2 position;
  Vec2 waypoint;
  double speed = 0;           // m/s toward waypoint
  std::deque<Packet> queue;   // FIFO, arrival_time nondecreasing
  double queue_bits = 0;      // cached sum of size_remaining
  double ewma_throughput = 0; // bit/s, floored
  double link_rate = 0;       // bits per RBG per subframe, refreshed per interval
  IntervalCounters interval;
  // Lifetime packet-conservation counters.
  std::int64_t arrived_total = 0;
  std::int64_t delivered_total = 0;
  std::int64_t dropped_total = 0;
};

struct SliceMetrics {
  double rx_throughput = 0;        // bit/s delivered
  double offered_load = 0;         // bit/s arrived
  double utilization = 0;          // fraction of granted RBGs used by own UEs
  double delay_violation_rate = 0; // (late + dropped) / (delivered + dropped)
  double avg_delay = 0;            // s, over delivered packets
  std::int64_t rbgs_granted = 0;   // RBG-slots over the interval
  std::int64_t rbgs_used = 0;      // RBG-slots used by this slice's UEs, incl. redistributed
};

}  // namespace slicerl::sim
