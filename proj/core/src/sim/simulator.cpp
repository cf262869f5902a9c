#include "slicerl/sim/simulator.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "slicerl/common/hash.hpp"
#include "slicerl/sim/channel.hpp"
#include "slicerl/sim/scheduler.hpp"
#include "slicerl/sim/traffic.hpp"

namespace slicerl::sim {

Simulator::Simulator(SimConfig cfg, std::uint64_t seed) : cfg_(std::move(cfg)) {
  cfg_.validate();
  slice_start_.resize(static_cast<size_t>(cfg_.num_slices) + 1, 0);
  for (int s = 0; s < cfg_.num_slices; ++s)
    slice_start_[static_cast<size_t>(s) + 1] = slice_start_[static_cast<size_t>(s)] + cfg_.ues_per_slice[static_cast<size_t>(s)];
  reset(seed);
}

void Simulator::place_ue(UeState& ue) {
  std::uniform_real_distribution<double> ux(0.0, cfg_.area_x);
  std::uniform_real_distribution<double> uy(0.0, cfg_.area_y);
  std::uniform_real_distribution<double> us(cfg_.speed_min, cfg_.speed_max);
  ue.position = {ux(rng_), uy(rng_)};
  ue.waypoint = {ux(rng_), uy(rng_)};
  ue.speed = us(rng_);
}

void Simulator::reset(std::uint64_t seed) {
  rng_ = make_rng(seed);
  intervals_elapsed_ = 0;
  audit_ = Audit{};
  subframe_stamp_ = 0;
  int total = cfg_.total_ues();
  ues_.assign(static_cast<size_t>(total), UeState{});
  for (int s = 0; s < cfg_.num_slices; ++s)
    for (int i = slice_start_[static_cast<size_t>(s)]; i < slice_start_[static_cast<size_t>(s) + 1]; ++i)
      ues_[static_cast<size_t>(i)].slice_id = s;
  for (auto& ue : ues_) {
    place_ue(ue);
    ue.ewma_throughput = cfg_.ewma_floor;
  }
  pending_.assign(static_cast<size_t>(total), {});
  pending_cursor_.assign(static_cast<size_t>(total), 0);
  rbg_count_.assign(static_cast<size_t>(total), 0);
  planned_bits_.assign(static_cast<size_t>(total), 0.0);
  rbg_owner_stamp_.assign(static_cast<size_t>(cfg_.num_rbgs), -1);
}

void Simulator::advance_waypoint(UeState& ue, double dt) {
  std::uniform_real_distribution<double> ux(0.0, cfg_.area_x);
  std::uniform_real_distribution<double> uy(0.0, cfg_.area_y);
  std::uniform_real_distribution<double> us(cfg_.speed_min, cfg_.speed_max);
  double travel = ue.speed * dt;
  for (int hop = 0; hop < 64 && travel > 0; ++hop) {
    double dx = ue.waypoint.x - ue.position.x;
    double dy = ue.waypoint.y - ue.position.y;
    double dist = std::hypot(dx, dy);
    if (dist <= travel || dist < 1e-12) {
      ue.position = ue.waypoint;
      travel -= dist;
      ue.waypoint = {ux(rng_), uy(rng_)};
      ue.speed = us(rng_);
      continue;
    }
    ue.position.x += dx / dist * travel;
    ue.position.y += dy / dist * travel;
    travel = 0;
  }
  // numeric containment
  ue.position.x = std::min(std::max(ue.position.x, 0.0), cfg_.area_x);
  ue.position.y = std::min(std::max(ue.position.y, 0.0), cfg_.area_y);
}

std::vector<SliceMetrics> Simulator::step(const std::vector<int>& allocation) {
  if (static_cast<int>(allocation.size()) != cfg_.num_slices)
    throw std::invalid_argument("step: allocation length != num_slices");
  long long granted = 0;
  for (int m : allocation) {
    if (m < 0) throw std::invalid_argument("step: allocation entries must be >= 0");
    granted += m;
  }
  if (granted > cfg_.num_rbgs)
    throw std::invalid_argument("step: allocation sums to " + std::to_string(granted) +
                                ", exceeds " + std::to_string(cfg_.num_rbgs) + " RBGs");

  double interval_start = now();
  double rate = cfg_.arrival_rate_pkts();

  for (size_t i = 0; i < ues_.size(); ++i) {
    UeState& ue = ues_[i];
    ue.interval.reset();
    pending_[i] = poisson_arrivals(rate, cfg_.control_interval, interval_start, cfg_.packet_size, rng_);
    pending_cursor_[i] = 0;
    ue.interval.arrived = static_cast<std::int64_t>(pending_[i].size());
    ue.arrived_total += ue.interval.arrived;
  }
  for (auto& ue : ues_) advance_waypoint(ue, cfg_.control_interval);
  for (auto& ue : ues_) ue.link_rate = link_rate(ue.position, cfg_);

  std::vector<std::int64_t> own_used(static_cast<size_t>(cfg_.num_slices), 0);
  std::vector<std::int64_t> total_used(static_cast<size_t>(cfg_.num_slices), 0);
  double sf = cfg_.subframe_duration();
  for (int k = 0; k < cfg_.subframes_per_interval; ++k) {
    double sf_start = interval_start + k * sf;
    double sf_end = interval_start + (k + 1) * sf;
    run_subframe(allocation, sf_start, sf_end, own_used, total_used);
  }

  std::vector<SliceMetrics> metrics(static_cast<size_t>(cfg_.num_slices));
  for (int s = 0; s < cfg_.num_slices; ++s) {
    SliceMetrics& m = metrics[static_cast<size_t>(s)];
    std::int64_t delivered = 0, violated = 0, dropped = 0, arrived = 0;
    double delay_sum = 0;
    for (int i = slice_start_[static_cast<size_t>(s)]; i < slice_start_[static_cast<size_t>(s) + 1]; ++i) {
      const IntervalCounters& c = ues_[static_cast<size_t>(i)].interval;
      delivered += c.delivered;
      violated += c.violated;
      dropped += c.dropped;
      arrived += c.arrived;
      delay_sum += c.delay_sum;
    }
    m.rx_throughput = static_cast<double>(delivered) * cfg_.packet_size / cfg_.control_interval;
    m.offered_load = static_cast<double>(arrived) * cfg_.packet_size / cfg_.control_interval;
    m.rbgs_granted = static_cast<std::int64_t>(allocation[static_cast<size_t>(s)]) * cfg_.subframes_per_interval;
    m.rbgs_used = total_used[static_cast<size_t>(s)];
    m.utilization = m.rbgs_granted > 0
                        ? static_cast<double>(own_used[static_cast<size_t>(s)]) / static_cast<double>(m.rbgs_granted)
                        : 0.0;
    std::int64_t fate = delivered + dropped;
    m.delay_violation_rate = fate > 0 ? static_cast<double>(violated + dropped) / static_cast<double>(fate) : 0.0;
    m.avg_delay = delivered > 0 ? delay_sum / static_cast<double>(delivered) : 0.0;
  }

  ++intervals_elapsed_;
  return metrics;
}

void Simulator::run_subframe(const std::vector<int>& allocation, double sf_start, double sf_end,
                             std::vector<std::int64_t>& own_used,
                             std::vector<std::int64_t>& total_used) {
  double drop_age = cfg_.drop_age_factor * cfg_.delay_threshold;

  for (size_t i = 0; i < ues_.size(); ++i) {
    UeState& ue = ues_[i];
    // admit packets that arrived before this subframe ends
    auto& pend = pending_[i];
    while (pending_cursor_[i] < pend.size() && pend[pending_cursor_[i]].arrival_time < sf_end) {
      ue.queue.push_back(pend[pending_cursor_[i]]);
      ue.queue_bits += pend[pending_cursor_[i]].size_remaining;
      ++pending_cursor_[i];
    }
    // age out stale packets; every drop counts as a violation
    while (!ue.queue.empty() && sf_start - ue.queue.front().arrival_time > drop_age) {
      ue.queue_bits -= ue.queue.front().size_remaining;
      ue.queue.pop_front();
      ue.interval.dropped += 1;
      ue.dropped_total += 1;
    }
  }

  // schedule: primary PF within each slice quota, then soft-slicing reuse
  std::fill(rbg_count_.begin(), rbg_count_.end(), 0);
  std::fill(planned_bits_.begin(), planned_bits_.end(), 0.0);
  ++subframe_stamp_;
  int next_rbg_id = 0;
  int assigned_total = 0;
  auto claim_rbg = [&]() {
    int id = next_rbg_id++;
    if (id < cfg_.num_rbgs) {
      if (rbg_owner_stamp_[static_cast<size_t>(id)] == subframe_stamp_) ++audit_.double_assignments;
      rbg_owner_stamp_[static_cast<size_t>(id)] = static_cast<int>(subframe_stamp_);
    } else {
      ++audit_.double_assignments;
    }
    ++assigned_total;
  };

  std::vector<PfCandidate> cands;
  std::vector<double> planned;
  int leftover = 0;
  for (int s = 0; s < cfg_.num_slices; ++s) {
    int quota = allocation[static_cast<size_t>(s)];
    int begin = slice_start_[static_cast<size_t>(s)];
    int end = slice_start_[static_cast<size_t>(s) + 1];
    cands.clear();
    planned.clear();
    for (int i = begin; i < end; ++i) {
      const UeState& ue = ues_[static_cast<size_t>(i)];
      cands.push_back(PfCandidate{ue.link_rate, ue.ewma_throughput, ue.queue_bits});
      planned.push_back(0.0);
    }
    std::vector<int> assignment = pf_assign(cands, quota, planned);
    for (int local : assignment) {
      int ue_idx = begin + local;
      rbg_count_[static_cast<size_t>(ue_idx)] += 1;
      claim_rbg();
      own_used[static_cast<size_t>(s)] += 1;
      total_used[static_cast<size_t>(s)] += 1;
    }
    for (int i = begin; i < end; ++i)
      planned_bits_[static_cast<size_t>(i)] = planned[static_cast<size_t>(i - begin)];
    leftover += quota - static_cast<int>(assignment.size());
  }

  if (leftover > 0) {
    cands.clear();
    for (const UeState& ue : ues_)
      cands.push_back(PfCandidate{ue.link_rate, ue.ewma_throughput, ue.queue_bits});
    std::vector<int> extra = soft_slicing_redistribute(cands, leftover, planned_bits_);
    for (int ue_idx : extra) {
      rbg_count_[static_cast<size_t>(ue_idx)] += 1;
      claim_rbg();
      total_used[static_cast<size_t>(ues_[static_cast<size_t>(ue_idx)].slice_id)] += 1;
    }
  }

  audit_.subframes += 1;
  audit_.max_rbgs_in_subframe = std::max(audit_.max_rbgs_in_subframe, assigned_total);

  // drain queues at the granted link capacity
  double sf_dur = cfg_.subframe_duration();
  for (size_t i = 0; i < ues_.size(); ++i) {
    UeState& ue = ues_[i];
    double budget = static_cast<double>(rbg_count_[i]) * ue.link_rate;
    double drained = 0;
    while (budget > 0 && !ue.queue.empty()) {
      Packet& p = ue.queue.front();
      if (p.size_remaining <= budget) {
        budget -= p.size_remaining;
        drained += p.size_remaining;
        ue.queue_bits -= p.size_remaining;
        double delay = sf_end - p.arrival_time;
        ue.interval.delivered += 1;
        ue.delivered_total += 1;
        ue.interval.delay_sum += delay;
        if (delay > cfg_.delay_threshold) ue.interval.violated += 1;
        ue.queue.pop_front();
      } else {
        p.size_remaining -= budget;
        ue.queue_bits -= budget;
        drained += budget;
        budget = 0;
      }
    }
    double inst = drained / sf_dur;
    ue.ewma_throughput = std::max((1.0 - cfg_.ewma_beta) * ue.ewma_throughput + cfg_.ewma_beta * inst,
                                  cfg_.ewma_floor);
  }
}

std::uint64_t Simulator::state_digest() const {
  std::string bytes;
  auto put_d = [&bytes](double v) {
    char raw[sizeof(double)];
    std::memcpy(raw, &v, sizeof(double));
    bytes.append(raw, sizeof(double));
  };
  auto put_i = [&bytes](std::int64_t v) {
    char raw[sizeof(std::int64_t)];
    std::memcpy(raw, &v, sizeof(std::int64_t));
    bytes.append(raw, sizeof(std::int64_t));
  };
  put_i(intervals_elapsed_);
  for (const UeState& ue : ues_) {
    put_d(ue.position.x);
    put_d(ue.position.y);
    put_d(ue.waypoint.x);
    put_d(ue.waypoint.y);
    put_d(ue.speed);
    put_d(ue.ewma_throughput);
    put_d(ue.queue_bits);
    put_i(static_cast<std::int64_t>(ue.queue.size()));
    put_i(ue.arrived_total);
    put_i(ue.delivered_total);
    put_i(ue.dropped_total);
    for (const Packet& p : ue.queue) {
      put_d(p.arrival_time);
      put_d(p.size_remaining);
    }
  }
  return fnv1a64(bytes);
}

}  // namespace slicerl::sim
