#include "csa/fsa_upgrade.hpp"

#include <stdexcept>

#include "csa/peeling.hpp"
#include "csa/traffic.hpp"

namespace csa {

FsaUpgradeResult run_fsa_upgrade(const FsaUpgradeConfig& cfg, Rng& rng) {
  const std::uint64_t nonce = cfg.beacon_nonce;
  FsaPlacement placement = [nonce](std::uint64_t identity, std::size_t frame,
                                   std::uint32_t replicas, std::uint32_t slots_per_frame,
                                   std::vector<std::uint32_t>& out) {
    const std::uint64_t seed = mix64(identity ^ mix64(frame * kGoldenGamma ^ nonce));
    out = replica_slots_from_seed(seed, replicas, slots_per_frame);
  };
  return run_fsa_upgrade(cfg, rng, placement);
}

FsaUpgradeResult run_fsa_upgrade(const FsaUpgradeConfig& cfg, Rng& rng,
                                 const FsaPlacement& placement) {
  if (cfg.slots_per_frame == 0)
    throw std::invalid_argument("fsa upgrade: slots_per_frame must be positive");
  if (cfg.num_frames < 1) throw std::invalid_argument("fsa upgrade: need at least one frame");
  if (cfg.replicas_per_frame < 1)
    throw std::invalid_argument("fsa upgrade: replicas_per_frame must be >= 1");
  if (cfg.replicas_per_frame > cfg.slots_per_frame)
    throw std::invalid_argument("fsa upgrade: more replicas than slots in a frame");
  if (cfg.mode != FsaUpgradeMode::kReplicated && cfg.replicas_per_frame != 1)
    throw std::invalid_argument("fsa upgrade: only the replicated mode sends > 1 per frame");

  const std::uint32_t m = cfg.slots_per_frame;
  const std::size_t n = cfg.n_active;

  // Identities are what the pseudorandom placement is keyed on; the run
  // draws them fresh so two trials differ exactly the way two populations
  // of real devices would.
  std::vector<std::uint64_t> identity(n);
  for (auto& id : identity) id = rng.next_u64();

  FsaUpgradeResult res;
  res.per_frame_resolved.assign(cfg.num_frames, 0);
  res.trace.resolved.assign(n, 0);
  res.trace.recovery_slot.assign(n, -1);

  const bool cross_frame = cfg.mode != FsaUpgradeMode::kLegacy;

  PeelingState global;
  if (cross_frame) {
    for (std::size_t u = 0; u < n; ++u) global.add_user();
    for (std::size_t f = 0; f < cfg.num_frames; ++f)
      for (std::uint32_t s = 0; s < m; ++s) global.add_slot();
  }

  std::vector<std::uint32_t> slots;
  std::vector<std::uint32_t> newly;
  for (std::size_t f = 0; f < cfg.num_frames; ++f) {
    std::size_t frame_resolved = 0;
    if (cross_frame) {
      for (std::size_t u = 0; u < n; ++u) {
        if (global.resolved(static_cast<std::uint32_t>(u))) continue;  // left the system
        placement(identity[u], f, cfg.replicas_per_frame, m, slots);
        for (std::uint32_t s : slots)
          global.add_edge(static_cast<std::uint32_t>(u),
                          static_cast<std::uint32_t>(f * m) + s);
      }
      newly.clear();
      // Cancellation inside settle reaches slots of every stored frame, so
      // a decode here can ripple backwards into earlier frames and forward
      // once later frames arrive.
      global.settle(&newly);
      frame_resolved = newly.size();
      for (std::uint32_t u : newly) {
        res.trace.resolved[u] = 1;
        res.trace.recovery_slot[u] = static_cast<std::int64_t>((f + 1) * m - 1);
      }
    } else {
      // Legacy receiver: each frame is decoded in isolation and only
      // original singletons deliver.
      PeelingState frame;
      for (std::size_t u = 0; u < n; ++u) frame.add_user();
      for (std::uint32_t s = 0; s < m; ++s) frame.add_slot();
      for (std::size_t u = 0; u < n; ++u) {
        if (res.trace.resolved[u]) continue;
        placement(identity[u], f, 1, m, slots);
        frame.add_edge(static_cast<std::uint32_t>(u), slots.front());
      }
      // Every transmitter has a single edge here, so settle resolves
      // exactly the singleton slots and cannot cascade: this is the legacy
      // decoder expressed through the same core.
      newly.clear();
      frame.settle(&newly);
      frame_resolved = newly.size();
      for (std::uint32_t u : newly) {
        res.trace.resolved[u] = 1;
        res.trace.recovery_slot[u] = static_cast<std::int64_t>((f + 1) * m - 1);
      }
    }
    res.per_frame_resolved[f] = frame_resolved;
    if (frame_resolved > 0) res.trace.per_iteration_resolved.push_back(frame_resolved);
  }

  res.trace.resolved_count = 0;
  for (auto r : res.trace.resolved) res.trace.resolved_count += r;
  res.trace.iterations = cfg.num_frames;
  res.metrics = Metrics::from_trace(res.trace, cfg.num_frames * m, n);
  return res;
}

}  // namespace csa
