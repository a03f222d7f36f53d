#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "csa/convolutional.hpp"
#include "csa/frameless.hpp"
#include "csa/fsa_upgrade.hpp"
#include "csa/rng.hpp"

using csa::FramelessConfig;
using csa::FsaUpgradeConfig;
using csa::FsaUpgradeMode;

TEST_CASE("frameless: single user") {
  FramelessConfig cfg;
  cfg.n_active = 1;
  cfg.beta = 0.5;
  cfg.max_slots = 10000;
  cfg.term_fraction = 1.0;
  csa::Rng rng(101);
  auto res = csa::run_frameless(cfg, rng);
  // terminates at the first slot in which the user transmits
  CHECK(res.trace.resolved_count == 1);
  CHECK(res.metrics.throughput == doctest::Approx(1.0 / res.terminated_slots));
  CHECK(res.trace.recovery_slot[0] == static_cast<std::int64_t>(res.terminated_slots - 1));
  CHECK(res.resolved_fraction.back() == doctest::Approx(1.0));
  for (std::size_t s = 0; s + 1 < res.resolved_fraction.size(); ++s)
    CHECK(res.resolved_fraction[s] == 0.0);
}

TEST_CASE("frameless: curve shape and termination") {
  FramelessConfig cfg;
  cfg.n_active = 400;
  cfg.beta = 3.1;
  cfg.max_slots = 4 * 400;
  cfg.term_fraction = 0.9;
  csa::Rng rng(103);
  auto res = csa::run_frameless(cfg, rng);

  CHECK(res.resolved_fraction.size() == res.terminated_slots);
  double prev = 0.0;
  for (std::size_t s = 0; s < res.resolved_fraction.size(); ++s) {
    const double f = res.resolved_fraction[s];
    CHECK(f >= prev);  // resolution never regresses
    CHECK(f <= 1.0);
    // instantaneous throughput is fraction * n / slots by definition
    CHECK(res.inst_throughput[s] ==
          doctest::Approx(f * 400.0 / static_cast<double>(s + 1)));
    prev = f;
  }
  const bool hit_fraction = res.resolved_fraction.back() >= 0.9;
  const bool hit_cap = res.terminated_slots == cfg.max_slots;
  CHECK((hit_fraction || hit_cap));
  for (std::size_t u = 0; u < 400; ++u) {
    if (res.trace.recovery_slot[u] >= 0)
      CHECK(res.trace.recovery_slot[u] < static_cast<std::int64_t>(res.terminated_slots));
  }
}

TEST_CASE("frameless: throughput termination rule") {
  FramelessConfig cfg;
  cfg.n_active = 500;
  cfg.beta = 3.1;
  cfg.max_slots = 5000;
  cfg.term_fraction = 1.0;          // effectively disabled
  cfg.term_throughput = 0.8;        // fires during the avalanche
  csa::Rng rng(105);
  auto res = csa::run_frameless(cfg, rng);
  if (res.terminated_slots < cfg.max_slots && res.resolved_fraction.back() < 1.0)
    CHECK(res.inst_throughput.back() >= 0.8);
}

TEST_CASE("frameless: validation") {
  csa::Rng rng(1);
  FramelessConfig cfg;
  cfg.n_active = 0;
  cfg.max_slots = 10;
  CHECK_THROWS_AS(csa::run_frameless(cfg, rng), std::invalid_argument);
  cfg.n_active = 10;
  cfg.beta = 11.0;  // beta above the user count
  CHECK_THROWS_AS(csa::run_frameless(cfg, rng), std::invalid_argument);
  cfg.beta = 3.1;
  cfg.term_fraction = 0.0;
  CHECK_THROWS_AS(csa::run_frameless(cfg, rng), std::invalid_argument);
  cfg.term_fraction = 0.9;
  cfg.max_slots = 0;
  CHECK_THROWS_AS(csa::run_frameless(cfg, rng), std::invalid_argument);
}

TEST_CASE("coupled periods: single-replica case matches framed slotted behaviour") {
  csa::ConvolutionalConfig cfg;
  cfg.repetition = 1;
  cfg.slots_per_period = 500;
  cfg.mean_arrivals = 250.0;  // G = 0.5 per period
  cfg.num_periods = 20;
  double tp = 0.0;
  int count = 0;
  for (int t = 0; t < 5; ++t) {
    csa::Rng rng(csa::derive_seed(107, t));
    auto res = csa::run_convolutional(cfg, rng);
    for (const auto& p : res.periods) {
      tp += p.throughput;
      ++count;
      CHECK(p.physical_load == doctest::Approx(p.arrivals / 500.0));  // d=1: loads coincide
    }
  }
  tp /= count;
  CHECK(std::abs(tp - 0.5 * std::exp(-0.5)) < 0.03);
}

TEST_CASE("coupled periods: load ramps over the first d periods") {
  csa::ConvolutionalConfig cfg;
  cfg.repetition = 3;
  cfg.slots_per_period = 2000;
  cfg.mean_arrivals = 1000.0;  // G = 0.5
  cfg.num_periods = 10;
  csa::Rng rng(109);
  auto res = csa::run_convolutional(cfg, rng);
  CHECK(res.periods.size() == 10);
  // period i carries one replica from each of the cohorts max(0,i-2)..i
  CHECK(res.periods[0].physical_load == doctest::Approx(0.5).epsilon(0.12));
  CHECK(res.periods[1].physical_load == doctest::Approx(1.0).epsilon(0.10));
  for (std::size_t i = 2; i < 10; ++i)
    CHECK(res.periods[i].physical_load == doctest::Approx(1.5).epsilon(0.10));
  std::size_t replicas = 0;
  for (const auto& p : res.periods) replicas += p.replicas;
  CHECK(replicas <= res.total_arrivals * 3);  // the tail holds the rest
}

TEST_CASE("coupled periods: validation") {
  csa::Rng rng(1);
  csa::ConvolutionalConfig cfg;
  cfg.repetition = 0;
  cfg.slots_per_period = 100;
  cfg.mean_arrivals = 50;
  cfg.num_periods = 5;
  CHECK_THROWS_AS(csa::run_convolutional(cfg, rng), std::invalid_argument);
  cfg.repetition = 3;
  cfg.num_periods = 2;  // fewer periods than replicas
  CHECK_THROWS_AS(csa::run_convolutional(cfg, rng), std::invalid_argument);
  cfg.num_periods = 5;
  cfg.mean_arrivals = 0.0;
  CHECK_THROWS_AS(csa::run_convolutional(cfg, rng), std::invalid_argument);
}

namespace {

// Hand-built placement: four users, five slots per frame. Frame 0 is all
// collisions; frame 1 gives users 0 and 3 clean slots while 1 and 2 collide;
// frame 2 separates users 1 and 2.
void fixture_placement(std::uint64_t identity, std::size_t frame, std::uint32_t replicas,
                       std::uint32_t /*slots_per_frame*/, std::vector<std::uint32_t>& out) {
  static const std::uint32_t table[3][4] = {
      {0, 0, 1, 1},
      {0, 2, 2, 1},
      {3, 0, 1, 4},
  };
  out.assign(1, table[frame][identity]);
  (void)replicas;
}

// Identities are random draws, not indices, so the table is keyed by order
// of first appearance instead.
struct CountingPlacement {
  mutable std::vector<std::uint64_t> seen;
  void operator()(std::uint64_t identity, std::size_t frame, std::uint32_t replicas,
                  std::uint32_t slots_per_frame, std::vector<std::uint32_t>& out) const {
    // map the random identity to a stable small index by first appearance
    std::size_t idx = 0;
    for (; idx < seen.size(); ++idx)
      if (seen[idx] == identity) break;
    if (idx == seen.size()) seen.push_back(identity);
    fixture_placement(idx, frame, replicas, slots_per_frame, out);
  }
};

}  // namespace

TEST_CASE("upgrade path: constructed pattern separates the three generations") {
  FsaUpgradeConfig cfg;
  cfg.slots_per_frame = 5;
  cfg.n_active = 4;

  // Legacy mode: only per-frame singletons, three frames to finish.
  cfg.mode = FsaUpgradeMode::kLegacy;
  cfg.num_frames = 3;
  {
    csa::Rng rng(111);
    CountingPlacement cp;
    auto res = csa::run_fsa_upgrade(cfg, rng, std::ref(cp));
    CHECK(res.per_frame_resolved == std::vector<std::size_t>{0, 2, 2});
    CHECK(res.trace.resolved_count == 4);
    CHECK(res.metrics.throughput == doctest::Approx(4.0 / 15.0));
  }

  // Frame-crossing receiver: the frame-1 singletons unlock frame 0.
  cfg.mode = FsaUpgradeMode::kCrossFrame;
  cfg.num_frames = 2;
  {
    csa::Rng rng(111);
    CountingPlacement cp;
    auto res = csa::run_fsa_upgrade(cfg, rng, std::ref(cp));
    CHECK(res.per_frame_resolved == std::vector<std::size_t>{0, 4});
    CHECK(res.trace.resolved_count == 4);
  }
}

TEST_CASE("upgrade path: replicated mode cancels within a frame") {
  FsaUpgradeConfig cfg;
  cfg.mode = FsaUpgradeMode::kReplicated;
  cfg.slots_per_frame = 8;
  cfg.num_frames = 1;
  cfg.n_active = 2;
  cfg.replicas_per_frame = 3;
  csa::Rng rng(113);
  auto placement = [](std::uint64_t identity, std::size_t, std::uint32_t,
                      std::uint32_t, std::vector<std::uint32_t>& out) {
    static std::vector<std::uint64_t> seen;
    std::size_t idx = 0;
    for (; idx < seen.size(); ++idx)
      if (seen[idx] == identity) break;
    if (idx == seen.size()) seen.push_back(identity);
    out = idx == 0 ? std::vector<std::uint32_t>{0, 1, 2} : std::vector<std::uint32_t>{2, 3, 4};
  };
  auto res = csa::run_fsa_upgrade(cfg, rng, placement);
  CHECK(res.trace.resolved_count == 2);
  CHECK(res.per_frame_resolved == std::vector<std::size_t>{2});
}

TEST_CASE("upgrade path: one frame makes modes a and b coincide") {
  FsaUpgradeConfig cfg;
  cfg.slots_per_frame = 64;
  cfg.num_frames = 1;
  cfg.n_active = 80;
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 17ull}) {
    cfg.mode = FsaUpgradeMode::kLegacy;
    csa::Rng ra(seed);
    auto a = csa::run_fsa_upgrade(cfg, ra);
    cfg.mode = FsaUpgradeMode::kCrossFrame;
    csa::Rng rb(seed);
    auto b = csa::run_fsa_upgrade(cfg, rb);
    CHECK(a.per_frame_resolved == b.per_frame_resolved);
    CHECK(a.metrics.throughput == b.metrics.throughput);
    CHECK(a.metrics.plr == b.metrics.plr);
    CHECK(a.metrics.mean_delay == b.metrics.mean_delay);
    CHECK(a.trace.resolved == b.trace.resolved);
  }
}

TEST_CASE("upgrade path: replicated mode with one replica equals cross-frame mode") {
  FsaUpgradeConfig cfg;
  cfg.slots_per_frame = 50;
  cfg.num_frames = 3;
  cfg.n_active = 60;
  cfg.replicas_per_frame = 1;
  cfg.mode = FsaUpgradeMode::kCrossFrame;
  csa::Rng r1(211);
  auto b = csa::run_fsa_upgrade(cfg, r1);
  cfg.mode = FsaUpgradeMode::kReplicated;
  csa::Rng r2(211);
  auto c = csa::run_fsa_upgrade(cfg, r2);
  CHECK(b.per_frame_resolved == c.per_frame_resolved);
  CHECK(b.trace.resolved == c.trace.resolved);
  CHECK(b.metrics.throughput == c.metrics.throughput);
}

TEST_CASE("upgrade path: resolved users leave the system") {
  FsaUpgradeConfig cfg;
  cfg.mode = FsaUpgradeMode::kCrossFrame;
  cfg.slots_per_frame = 16;
  cfg.num_frames = 4;
  cfg.n_active = 1;
  csa::Rng rng(117);
  auto res = csa::run_fsa_upgrade(cfg, rng);
  CHECK(res.per_frame_resolved == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(res.trace.recovery_slot[0] == 15);  // end of the first frame
}

TEST_CASE("upgrade path: validation") {
  csa::Rng rng(1);
  FsaUpgradeConfig cfg;
  cfg.slots_per_frame = 0;
  CHECK_THROWS_AS(csa::run_fsa_upgrade(cfg, rng), std::invalid_argument);
  cfg.slots_per_frame = 10;
  cfg.mode = FsaUpgradeMode::kLegacy;
  cfg.replicas_per_frame = 2;  // legacy hardware sends once per frame
  cfg.n_active = 5;
  CHECK_THROWS_AS(csa::run_fsa_upgrade(cfg, rng), std::invalid_argument);
  cfg.mode = FsaUpgradeMode::kReplicated;
  cfg.replicas_per_frame = 11;  // more than the frame holds
  CHECK_THROWS_AS(csa::run_fsa_upgrade(cfg, rng), std::invalid_argument);
}

TEST_CASE("upgrade path: legacy throughput near 1/e at unit load") {
  FsaUpgradeConfig cfg;
  cfg.mode = FsaUpgradeMode::kLegacy;
  cfg.slots_per_frame = 200;
  cfg.num_frames = 1;
  cfg.n_active = 200;
  double sum = 0.0;
  const int trials = 400;
  for (int t = 0; t < trials; ++t) {
    csa::Rng rng(csa::derive_seed(119, t));
    sum += csa::run_fsa_upgrade(cfg, rng).metrics.throughput;
  }
  CHECK(std::abs(sum / trials - std::exp(-1.0)) < 0.03);
}
