// Bipartite contention graph of one frame: users on one side, slots on the
// other, an edge per transmitted replica.
#pragma once

#include <cstdint>
#include <vector>

namespace csa {

struct UserRecord {
  std::uint64_t user_id = 0;
  std::vector<std::uint32_t> replica_slots;  // distinct, each < num_slots
};

class ContentionGraph {
 public:
  // Validates every replica slot index and rejects duplicate slots within a
  // user (throws std::out_of_range / std::invalid_argument).
  ContentionGraph(std::uint32_t num_slots, std::vector<UserRecord> users);

  std::uint32_t num_slots() const { return num_slots_; }
  std::size_t num_users() const { return users_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  const UserRecord& user(std::size_t i) const { return users_[i]; }
  const std::vector<UserRecord>& users() const { return users_; }

  // Transposed view: indices of the users with a replica in the slot.
  const std::vector<std::uint32_t>& slot_users(std::uint32_t slot) const {
    return slot_users_[slot];
  }

 private:
  std::uint32_t num_slots_;
  std::size_t num_edges_ = 0;
  std::vector<UserRecord> users_;
  std::vector<std::vector<std::uint32_t>> slot_users_;
};

}  // namespace csa
