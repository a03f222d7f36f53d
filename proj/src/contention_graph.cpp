#include "csa/contention_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace csa {

ContentionGraph::ContentionGraph(std::uint32_t num_slots, std::vector<UserRecord> users)
    : num_slots_(num_slots), users_(std::move(users)), slot_users_(num_slots) {
  for (std::size_t i = 0; i < users_.size(); ++i) {
    const auto& slots = users_[i].replica_slots;
    for (std::uint32_t s : slots) {
      if (s >= num_slots_)
        throw std::out_of_range("contention graph: slot " + std::to_string(s) +
                                " out of range for user " + std::to_string(i));
    }
    auto sorted = slots;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("contention graph: duplicate replica slot for user " +
                                  std::to_string(i));
    for (std::uint32_t s : slots) slot_users_[s].push_back(static_cast<std::uint32_t>(i));
    num_edges_ += slots.size();
  }
}

}  // namespace csa
