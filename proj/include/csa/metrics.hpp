// Decoder trace and the derived per-run metrics.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace csa {

// Record of one decoding run. `resolved` has one flag per user index.
// `per_iteration_resolved` lists, for each synchronous iteration that
// resolved at least one user, how many it resolved; the entries sum to
// `resolved_count`. `recovery_slot[u]` is the slot index at which user u
// became known, or -1 where the decoder does not track it (framed decoders
// deliver everything at frame end).
struct DecodeTrace {
  std::vector<std::uint8_t> resolved;
  std::size_t resolved_count = 0;
  std::size_t iterations = 0;
  std::vector<std::size_t> per_iteration_resolved;
  std::vector<std::int64_t> recovery_slot;

  bool is_resolved(std::size_t user) const {
    return user < resolved.size() && resolved[user] != 0;
  }
};

struct Metrics {
  double throughput = 0.0;  // resolved packets per slot
  double plr = 0.0;         // unresolved fraction of active users
  double mean_delay = 0.0;  // mean recovery slot over users with one recorded

  static Metrics from_trace(const DecodeTrace& trace, std::size_t slots_used,
                            std::size_t n_active);
};

}  // namespace csa
