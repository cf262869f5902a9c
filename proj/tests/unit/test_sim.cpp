#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "slicerl/common/rng.hpp"
#include "slicerl/common/stats.hpp"
#include "slicerl/sim/channel.hpp"
#include "slicerl/sim/scheduler.hpp"
#include "slicerl/sim/simulator.hpp"
#include "slicerl/sim/traffic.hpp"

using namespace slicerl;
using namespace slicerl::sim;

namespace {

// Independent per-RBG argmax reference: scan every candidate each RBG, take
// the best rate/ewma whose backlog is not yet covered, lowest index on ties.
std::vector<int> reference_pf(const std::vector<PfCandidate>& cands, int budget,
                              std::vector<double>& planned) {
  std::vector<int> out;
  for (int r = 0; r < budget; ++r) {
    int best = -1;
    double best_metric = 0;
    for (int i = 0; i < static_cast<int>(cands.size()); ++i) {
      if (cands[i].backlog_bits <= planned[i]) continue;
      double metric = cands[i].link_rate / cands[i].ewma;
      if (best < 0 || metric > best_metric) {
        best = i;
        best_metric = metric;
      }
    }
    if (best < 0) break;
    out.push_back(best);
    planned[best] += cands[best].link_rate;
  }
  return out;
}

std::vector<PfCandidate> random_candidates(int n, Rng& rng) {
  std::uniform_real_distribution<double> rate(1e3, 1e6);
  std::uniform_real_distribution<double> ewma(1e3, 1e7);
  std::uniform_int_distribution<int> backlog_kind(0, 3);
  std::uniform_real_distribution<double> backlog(0.0, 5e5);
  std::vector<PfCandidate> out(n);
  for (auto& c : out) {
    c.link_rate = rate(rng);
    c.ewma = ewma(rng);
    c.backlog_bits = backlog_kind(rng) == 0 ? 0.0 : backlog(rng);
  }
  return out;
}

SimConfig tiny_config() {
  SimConfig cfg;
  cfg.num_slices = 1;
  cfg.ues_per_slice = {3};
  cfg.num_rbgs = 25;
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("sim");

TEST_CASE("poisson arrivals: zero rate gives an empty batch") {
  Rng rng = make_rng(1);
  CHECK(poisson_arrivals(0.0, 0.1, 5.0, 5000, rng).empty());
}

TEST_CASE("poisson arrivals match the Poisson mean and variance") {
  // 2 Mbit/s over 5000-bit packets = 400 pkt/s; dt = 0.1 s -> mean 40.
  Rng rng = make_rng(2);
  const int draws = 100000;
  std::vector<double> counts(draws);
  for (int i = 0; i < draws; ++i)
    counts[i] = static_cast<double>(poisson_arrivals(400.0, 0.1, 0.0, 5000, rng).size());
  double m = mean(counts);
  double v = sample_variance(counts);
  CHECK(m == doctest::Approx(40.0).epsilon(0.01));
  CHECK(v == doctest::Approx(40.0).epsilon(0.05));
}

TEST_CASE("poisson arrivals are sorted, in-window, and full-sized") {
  Rng rng = make_rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto batch = poisson_arrivals(400.0, 0.1, 7.5, 5000, rng);
    for (size_t i = 0; i < batch.size(); ++i) {
      CHECK(batch[i].arrival_time >= 7.5);
      CHECK(batch[i].arrival_time < 7.6);
      CHECK(batch[i].size_remaining == 5000);
      if (i > 0) CHECK(batch[i].arrival_time >= batch[i - 1].arrival_time);
    }
  }
}

TEST_CASE("link rate peaks at the base station and decays with distance") {
  SimConfig cfg;
  const Vec2 bs = base_station(cfg);
  const double peak = link_rate(bs, cfg);
  CHECK(peak > 0);

  // Monotone along a ray from the anchor.
  double prev = peak;
  for (double off = 0.5; off < 60.0; off += 0.5) {
    double r = link_rate({bs.x + off, bs.y}, cfg);
    CHECK(r <= prev + 1e-9);
    CHECK(r > 0);
    prev = r;
  }

  // Full-area grid stays positive and never beats the anchor.
  for (double x = 0; x <= cfg.area_x; x += 5.0)
    for (double y = 0; y <= cfg.area_y; y += 2.5) {
      double r = link_rate({x, y}, cfg);
      CHECK(r > 0);
      CHECK(r <= peak);
    }
}

TEST_CASE("pf_schedule: no backlog means no assignment") {
  std::vector<PfCandidate> cands(3);
  for (auto& c : cands) {
    c.link_rate = 1e5;
    c.ewma = 1e3;
    c.backlog_bits = 0;
  }
  CHECK(pf_schedule(cands, 10).empty());
}

TEST_CASE("pf_schedule: a sole backlogged candidate takes the whole budget") {
  std::vector<PfCandidate> cands(4);
  for (auto& c : cands) {
    c.link_rate = 1e5;
    c.ewma = 1e3;
    c.backlog_bits = 0;
  }
  cands[2].backlog_bits = 1e9;
  auto got = pf_schedule(cands, 3);
  CHECK(got == std::vector<int>{2, 2, 2});
}

TEST_CASE("pf_schedule ties break to the lowest index") {
  std::vector<PfCandidate> cands(3);
  for (auto& c : cands) {
    c.link_rate = 2e5;
    c.ewma = 1e4;
    c.backlog_bits = 1e9;
  }
  auto got = pf_schedule(cands, 4);
  // Identical metrics throughout; index 0 wins every RBG.
  CHECK(got == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("pf_schedule matches the per-RBG argmax reference on random instances") {
  Rng rng = make_rng(4);
  std::uniform_int_distribution<int> n_ues(1, 8);
  std::uniform_int_distribution<int> budget(0, 25);
  for (int trial = 0; trial < 300; ++trial) {
    auto cands = random_candidates(n_ues(rng), rng);
    int b = budget(rng);
    std::vector<double> planned_ref(cands.size(), 0.0);
    auto want = reference_pf(cands, b, planned_ref);
    auto got = pf_schedule(cands, b);
    CHECK(got == want);
  }
}

TEST_CASE("soft slicing: zero leftover reassigns nothing") {
  Rng rng = make_rng(5);
  auto cands = random_candidates(5, rng);
  std::vector<double> planned(cands.size(), 0.0);
  CHECK(soft_slicing_redistribute(cands, 0, planned).empty());
}

TEST_CASE("soft slicing: an idle slice's quota flows to the backlogged one") {
  // Pool of 4 UEs; the first two (slice A) are idle, the rest backlogged.
  std::vector<PfCandidate> pooled(4);
  for (auto& c : pooled) {
    c.link_rate = 1e5;
    c.ewma = 1e4;
  }
  pooled[0].backlog_bits = 0;
  pooled[1].backlog_bits = 0;
  pooled[2].backlog_bits = 1e9;
  pooled[3].backlog_bits = 1e9;
  std::vector<double> planned(4, 0.0);
  auto got = soft_slicing_redistribute(pooled, 10, planned);
  REQUIRE(got.size() == 10);
  for (int idx : got) CHECK(idx >= 2);
}

TEST_CASE("soft slicing continues the primary pass's planned capacity") {
  Rng rng = make_rng(6);
  std::uniform_int_distribution<int> n_ues(1, 8);
  std::uniform_int_distribution<int> primary_budget(0, 12);
  std::uniform_int_distribution<int> leftover(0, 13);
  for (int trial = 0; trial < 300; ++trial) {
    auto cands = random_candidates(n_ues(rng), rng);
    int b1 = primary_budget(rng), b2 = leftover(rng);

    // Reference: one continuous argmax run of b1 + b2 RBGs.
    std::vector<double> planned_ref(cands.size(), 0.0);
    auto want = reference_pf(cands, b1 + b2, planned_ref);

    std::vector<double> planned(cands.size(), 0.0);
    auto first = pf_assign(cands, b1, planned);
    auto second = soft_slicing_redistribute(cands, b2, planned);
    std::vector<int> got = first;
    got.insert(got.end(), second.begin(), second.end());
    CHECK(got == want);
  }
}

TEST_CASE("simulator rejects invalid configs and allocations") {
  SimConfig cfg;
  cfg.ues_per_slice = {6, 13};  // wrong length for 3 slices
  CHECK_THROWS_AS(Simulator(cfg, 1), std::invalid_argument);

  Simulator sim{SimConfig{}, 1};
  CHECK_THROWS_AS(sim.step({26, 0, 0}), std::invalid_argument);   // 26 > 25
  CHECK_THROWS_AS(sim.step({10, 10, 6}), std::invalid_argument);  // sums to 26
  CHECK_THROWS_AS(sim.step({-1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sim.step({25, 0}), std::invalid_argument);  // wrong length
}

TEST_CASE("simulator builds sum(ues_per_slice) UEs with matching slice ids") {
  Simulator sim{SimConfig{}, 7};
  REQUIRE(static_cast<int>(sim.ues().size()) == 6 + 13 + 20);
  int per_slice[3] = {0, 0, 0};
  for (const auto& ue : sim.ues()) {
    REQUIRE(ue.slice_id >= 0);
    REQUIRE(ue.slice_id < 3);
    per_slice[ue.slice_id]++;
  }
  CHECK(per_slice[0] == 6);
  CHECK(per_slice[1] == 13);
  CHECK(per_slice[2] == 20);
}

TEST_CASE("same config and seed reproduce the same world and metrics") {
  SimConfig cfg;
  Simulator a{cfg, 7};
  Simulator b{cfg, 7};
  CHECK(a.state_digest() == b.state_digest());

  Rng rng = make_rng(8);
  std::uniform_int_distribution<int> part(0, 25);
  for (int step = 0; step < 10; ++step) {
    int g0 = part(rng);
    int g1 = part(rng) % (26 - g0);
    std::vector<int> alloc = {g0, g1, 25 - g0 - g1};
    auto ma = a.step(alloc);
    auto mb = b.step(alloc);
    REQUIRE(ma.size() == mb.size());
    for (size_t s = 0; s < ma.size(); ++s) {
      CHECK(ma[s].rx_throughput == mb[s].rx_throughput);
      CHECK(ma[s].delay_violation_rate == mb[s].delay_violation_rate);
      CHECK(ma[s].avg_delay == mb[s].avg_delay);
      CHECK(ma[s].rbgs_used == mb[s].rbgs_used);
    }
    CHECK(a.state_digest() == b.state_digest());
  }

  // reset gives back the seed-0 world regardless of history.
  a.reset(7);
  CHECK(a.state_digest() == Simulator(cfg, 7).state_digest());
}

TEST_CASE("zero allocation delivers nothing while queues grow") {
  Simulator sim{SimConfig{}, 9};
  double prev_backlog = 0;
  for (int step = 0; step < 5; ++step) {
    auto metrics = sim.step({0, 0, 0});
    double backlog = 0;
    for (const auto& ue : sim.ues()) backlog += ue.queue_bits;
    for (const auto& m : metrics) {
      CHECK(m.rx_throughput == 0);
      CHECK(m.rbgs_used == 0);
    }
    CHECK(backlog > prev_backlog);  // arrivals keep queuing, nothing drains
    prev_backlog = backlog;
  }
}

TEST_CASE("a lightly loaded single slice has zero violations after warmup") {
  SimConfig cfg = tiny_config();
  cfg.offered_load_per_ue = 1e5;  // far below one slice's 25-RBG capacity
  Simulator sim{cfg, 10};
  for (int step = 0; step < 5; ++step) sim.step({25});  // warmup
  for (int step = 0; step < 20; ++step) {
    auto metrics = sim.step({25});
    CHECK(metrics[0].delay_violation_rate == 0);
  }
}

TEST_CASE("packet conservation holds exactly under random actions") {
  SimConfig cfg;
  Simulator sim{cfg, 11};
  Rng rng = make_rng(12);
  std::uniform_int_distribution<int> part(0, 25);
  for (int step = 0; step < 60; ++step) {
    int g0 = part(rng);
    int g1 = part(rng) % (26 - g0);
    auto metrics = sim.step({g0, g1, 25 - g0 - g1});
    for (const auto& m : metrics) CHECK(m.avg_delay >= 0);
    for (const auto& ue : sim.ues()) {
      CHECK(ue.arrived_total ==
            ue.delivered_total + ue.dropped_total + static_cast<std::int64_t>(ue.queue.size()));
      CHECK(ue.ewma_throughput >= cfg.ewma_floor);
    }
  }
}

TEST_CASE("per-subframe RBG audit: never above M, never double-assigned") {
  Simulator sim{SimConfig{}, 13};
  Rng rng = make_rng(14);
  std::uniform_int_distribution<int> part(0, 25);
  for (int step = 0; step < 50; ++step) {
    int g0 = part(rng);
    int g1 = part(rng) % (26 - g0);
    sim.step({g0, g1, 25 - g0 - g1});
  }
  CHECK(sim.audit().subframes == 50 * 100);
  CHECK(sim.audit().max_rbgs_in_subframe <= 25);
  CHECK(sim.audit().double_assignments == 0);
}

TEST_CASE("granted RBG-slots follow the allocation and utilization stays in [0,1]") {
  Simulator sim{SimConfig{}, 15};
  auto metrics = sim.step({10, 10, 5});
  CHECK(metrics[0].rbgs_granted == 10 * 100);
  CHECK(metrics[1].rbgs_granted == 10 * 100);
  CHECK(metrics[2].rbgs_granted == 5 * 100);
  for (const auto& m : metrics) {
    CHECK(m.utilization >= 0);
    CHECK(m.utilization <= 1);
  }
}

TEST_CASE("mobility keeps every UE inside the area over long horizons") {
  SimConfig cfg = tiny_config();
  cfg.ues_per_slice = {2};
  cfg.num_rbgs = 1;
  cfg.subframes_per_interval = 1;
  cfg.offered_load_per_ue = 0;  // pure mobility run
  Simulator sim{cfg, 16};
  long escapes = 0;
  for (int step = 0; step < 1000000; ++step) {
    sim.step({1});
    for (const auto& ue : sim.ues()) {
      bool inside = ue.position.x >= 0 && ue.position.x <= cfg.area_x && ue.position.y >= 0 &&
                    ue.position.y <= cfg.area_y;
      if (!inside) ++escapes;
    }
  }
  CHECK(escapes == 0);
}

TEST_SUITE_END();
