// Iterative interference-cancellation decoding as peeling on the contention
// graph. Slots keep a degree counter and the XOR of incident user indices,
// so the survivor in a degree-1 slot is read off without storing per-slot
// user lists. Iterations are synchronous rounds: every slot that is degree 1
// at the start of a round resolves in that round, and the edges freed by
// those resolutions only take effect in the next round. The resolved set is
// the same for any processing order; the round structure makes traces
// comparable across engines.
#pragma once

#include <cstdint>
#include <vector>

#include "csa/component_code.hpp"
#include "csa/contention_graph.hpp"
#include "csa/metrics.hpp"

namespace csa {

// Incremental peeling state for protocols that interleave arrivals and
// decoding (frameless operation, coupled frames, frame-crossing receivers).
class PeelingState {
 public:
  std::uint32_t add_slot();
  std::uint32_t add_user();

  // Records a replica of `user` in `slot`. A replica of an already resolved
  // user is cancelled on arrival, so this is a no-op for resolved users.
  void add_edge(std::uint32_t user, std::uint32_t slot);

  // Removes every pending replica of the user without marking it resolved.
  // Throws std::out_of_range for an unknown user and std::invalid_argument
  // for one that already resolved (its edges are gone).
  void cancel_user(std::uint32_t user);

  // Runs synchronous rounds until no degree-1 slot remains. Returns the
  // number of users resolved by this call; their indices are appended to
  // *newly_resolved when given, in resolution order.
  std::size_t settle(std::vector<std::uint32_t>* newly_resolved = nullptr);

  std::size_t num_users() const { return user_slots_.size(); }
  std::size_t num_slots() const { return slot_degree_.size(); }
  bool resolved(std::uint32_t user) const { return resolved_[user] != 0; }
  std::size_t resolved_count() const { return resolved_count_; }
  std::size_t residual_edges() const { return residual_edges_; }
  std::uint32_t slot_degree(std::uint32_t slot) const { return slot_degree_[slot]; }
  std::size_t rounds() const { return per_round_resolved_.size(); }
  const std::vector<std::size_t>& per_round_resolved() const { return per_round_resolved_; }

  // One line per round: "iter,resolved_count,residual_edges" with the
  // cumulative resolved count and the edges left after that round.
  std::string iteration_csv() const;

  // Snapshot of the run so far. recovery_slot is filled with -1; callers
  // that track recovery times overwrite it.
  DecodeTrace trace() const;

 private:
  void detach(std::uint32_t user);

  std::vector<std::uint32_t> slot_degree_;
  std::vector<std::uint32_t> slot_xor_;  // XOR of unresolved incident users
  std::vector<std::vector<std::uint32_t>> user_slots_;
  std::vector<std::uint8_t> resolved_;
  std::vector<std::uint32_t> worklist_;  // slots that touched degree 1
  std::vector<std::uint32_t> current_;
  std::size_t resolved_count_ = 0;
  std::size_t residual_edges_ = 0;
  std::vector<std::size_t> per_round_resolved_;
  std::vector<std::size_t> per_round_residual_;
};

// Full interference-cancellation decode of one frame. When iteration_csv is
// given it receives the per-round trace dump.
DecodeTrace peel(const ContentionGraph& graph, std::string* iteration_csv = nullptr);

// Plain slotted decoding: only slots that are singletons in the original
// frame deliver a packet, nothing is cancelled.
DecodeTrace singleton_only(const ContentionGraph& graph);

// Decode with per-user component codes: a degree-1 slot reveals one code
// position of its survivor; the packet resolves once the revealed positions
// determine the information segments, and resolution cancels all of the
// user's replicas. codes[i] applies to user i and its length must equal the
// user's replica count. With every code of dimension 1 this produces a
// trace identical to peel().
DecodeTrace peel_generalized(const ContentionGraph& graph,
                             const std::vector<ComponentCode>& codes);

}  // namespace csa
