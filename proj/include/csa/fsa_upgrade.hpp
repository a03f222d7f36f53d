// Migration path for legacy framed slotted systems. Users derive their slot
// choices from a pseudorandom function of (identity, frame index, beacon
// nonce), so a receiver that knows the identities can reconstruct every
// placement. Three receiver/transmitter generations:
//   a: legacy receiver, singleton slots per frame, no cancellation.
//   b: same single transmission per frame, but the receiver stores frames
//      and cancels replicas of decoded users across all of them.
//   c: users additionally send several replicas per frame, full
//      cancellation within and across frames.
// Resolved users leave the system: they do not transmit in later frames.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "csa/metrics.hpp"
#include "csa/rng.hpp"

namespace csa {

enum class FsaUpgradeMode { kLegacy, kCrossFrame, kReplicated };

struct FsaUpgradeConfig {
  FsaUpgradeMode mode = FsaUpgradeMode::kLegacy;
  std::uint32_t slots_per_frame = 0;
  std::size_t num_frames = 1;
  std::size_t n_active = 0;
  std::uint32_t replicas_per_frame = 1;  // > 1 only in kReplicated
  std::uint64_t beacon_nonce = 0;
};

// Slot choices of one user in one frame, written into `out`.
using FsaPlacement = std::function<void(std::uint64_t identity, std::size_t frame,
                                        std::uint32_t replicas, std::uint32_t slots_per_frame,
                                        std::vector<std::uint32_t>& out)>;

struct FsaUpgradeResult {
  std::vector<std::size_t> per_frame_resolved;  // users first decoded in each frame
  Metrics metrics;   // throughput over num_frames * slots_per_frame slots
  DecodeTrace trace; // recovery_slot = last slot of the decoding frame
};

// Runs with the protocol placement: counter-mode hash of
// (identity, frame, beacon nonce). Identities are drawn per run from `rng`.
FsaUpgradeResult run_fsa_upgrade(const FsaUpgradeConfig& config, Rng& rng);

// Same engine with an injected placement; used to pin down behaviour on
// constructed collision patterns.
FsaUpgradeResult run_fsa_upgrade(const FsaUpgradeConfig& config, Rng& rng,
                                 const FsaPlacement& placement);

}  // namespace csa
