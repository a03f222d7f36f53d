#include "csa/peeling.hpp"

#include <stdexcept>
#include <string>

namespace csa {

std::uint32_t PeelingState::add_slot() {
  slot_degree_.push_back(0);
  slot_xor_.push_back(0);
  return static_cast<std::uint32_t>(slot_degree_.size() - 1);
}

std::uint32_t PeelingState::add_user() {
  user_slots_.emplace_back();
  resolved_.push_back(0);
  return static_cast<std::uint32_t>(user_slots_.size() - 1);
}

void PeelingState::add_edge(std::uint32_t user, std::uint32_t slot) {
  if (user >= user_slots_.size()) throw std::out_of_range("peeling: unknown user");
  if (slot >= slot_degree_.size()) throw std::out_of_range("peeling: unknown slot");
  if (resolved_[user]) return;
  user_slots_[user].push_back(slot);
  slot_xor_[slot] ^= user;
  ++residual_edges_;
  if (++slot_degree_[slot] == 1) worklist_.push_back(slot);
}

void PeelingState::detach(std::uint32_t user) {
  auto& slots = user_slots_[user];
  residual_edges_ -= slots.size();
  for (std::uint32_t s : slots) {
    --slot_degree_[s];
    slot_xor_[s] ^= user;
    if (slot_degree_[s] == 1) worklist_.push_back(s);
  }
  slots.clear();
}

void PeelingState::cancel_user(std::uint32_t user) {
  if (user >= user_slots_.size()) throw std::out_of_range("peeling: unknown user");
  if (resolved_[user])
    throw std::invalid_argument("peeling: user " + std::to_string(user) + " already resolved");
  detach(user);
}

std::size_t PeelingState::settle(std::vector<std::uint32_t>* newly_resolved) {
  std::size_t total = 0;
  while (!worklist_.empty()) {
    // A round consists of the slots at degree 1 right now. Stale entries are
    // dropped: if they fall back to degree 1 later, detach re-enqueues them.
    current_.clear();
    for (std::uint32_t s : worklist_)
      if (slot_degree_[s] == 1) current_.push_back(s);
    worklist_.clear();
    std::size_t round_count = 0;
    for (std::uint32_t s : current_) {
      if (slot_degree_[s] != 1) continue;  // user resolved via another slot this round
      const std::uint32_t user = slot_xor_[s];
      if (resolved_[user]) continue;
      resolved_[user] = 1;
      ++resolved_count_;
      ++round_count;
      if (newly_resolved) newly_resolved->push_back(user);
      detach(user);  // freed slots land in worklist_, i.e. the next round
    }
    current_.clear();
    if (round_count) {
      per_round_resolved_.push_back(round_count);
      per_round_residual_.push_back(residual_edges_);
      total += round_count;
    }
  }
  return total;
}

std::string PeelingState::iteration_csv() const {
  std::string out = "iter,resolved_count,residual_edges\n";
  std::size_t cumulative = 0;
  for (std::size_t i = 0; i < per_round_resolved_.size(); ++i) {
    cumulative += per_round_resolved_[i];
    out += std::to_string(i + 1);
    out += ',';
    out += std::to_string(cumulative);
    out += ',';
    out += std::to_string(per_round_residual_[i]);
    out += '\n';
  }
  return out;
}

DecodeTrace PeelingState::trace() const {
  DecodeTrace t;
  t.resolved = resolved_;
  t.resolved_count = resolved_count_;
  t.iterations = per_round_resolved_.size();
  t.per_iteration_resolved = per_round_resolved_;
  t.recovery_slot.assign(resolved_.size(), -1);
  return t;
}

DecodeTrace peel(const ContentionGraph& graph, std::string* iteration_csv) {
  PeelingState st;
  for (std::uint32_t s = 0; s < graph.num_slots(); ++s) st.add_slot();
  for (std::size_t u = 0; u < graph.num_users(); ++u) st.add_user();
  for (std::size_t u = 0; u < graph.num_users(); ++u)
    for (std::uint32_t s : graph.user(u).replica_slots)
      st.add_edge(static_cast<std::uint32_t>(u), s);
  st.settle();
  if (iteration_csv) *iteration_csv = st.iteration_csv();
  return st.trace();
}

DecodeTrace singleton_only(const ContentionGraph& graph) {
  DecodeTrace t;
  t.resolved.assign(graph.num_users(), 0);
  t.recovery_slot.assign(graph.num_users(), -1);
  for (std::uint32_t s = 0; s < graph.num_slots(); ++s) {
    const auto& users = graph.slot_users(s);
    if (users.size() != 1) continue;
    const std::uint32_t u = users.front();
    if (t.resolved[u]) continue;  // another replica already went through clean
    t.resolved[u] = 1;
    ++t.resolved_count;
  }
  if (t.resolved_count > 0) {
    t.iterations = 1;
    t.per_iteration_resolved.push_back(t.resolved_count);
  }
  return t;
}

DecodeTrace peel_generalized(const ContentionGraph& graph,
                             const std::vector<ComponentCode>& codes) {
  const std::size_t n = graph.num_users();
  if (codes.size() != n)
    throw std::invalid_argument("peel_generalized: one component code per user required");
  for (std::size_t u = 0; u < n; ++u)
    if (graph.user(u).replica_slots.size() != codes[u].length())
      throw std::invalid_argument("peel_generalized: replica count of user " + std::to_string(u) +
                                  " does not match its code length");

  const std::uint32_t num_slots = graph.num_slots();
  std::vector<std::uint32_t> degree(num_slots, 0);
  std::vector<std::uint32_t> xor_user(num_slots, 0);
  std::vector<std::uint32_t> xor_pos(num_slots, 0);
  for (std::size_t u = 0; u < n; ++u) {
    const auto& slots = graph.user(u).replica_slots;
    for (std::uint32_t j = 0; j < slots.size(); ++j) {
      const std::uint32_t s = slots[j];
      ++degree[s];
      xor_user[s] ^= static_cast<std::uint32_t>(u);
      xor_pos[s] ^= j;
    }
  }

  DecodeTrace t;
  t.resolved.assign(n, 0);
  t.recovery_slot.assign(n, -1);
  std::vector<std::uint32_t> known(n, 0);

  std::vector<std::uint32_t> work;
  for (std::uint32_t s = 0; s < num_slots; ++s)
    if (degree[s] == 1) work.push_back(s);

  std::vector<std::uint32_t> current;
  while (!work.empty()) {
    current.swap(work);
    std::size_t round_count = 0;
    for (std::uint32_t s : current) {
      if (degree[s] != 1) continue;
      const std::uint32_t u = xor_user[s];
      const std::uint32_t pos = xor_pos[s];
      if (t.resolved[u]) continue;
      const std::uint32_t bit = 1u << pos;
      if (known[u] & bit) continue;  // position already revealed, slot stays pinned
      known[u] |= bit;
      if (!codes[u].info_determined(known[u])) continue;
      t.resolved[u] = 1;
      ++t.resolved_count;
      ++round_count;
      // Resolution regenerates the whole codeword, so every replica of the
      // user is cancelled, revealed or not.
      const auto& slots = graph.user(u).replica_slots;
      for (std::uint32_t j = 0; j < slots.size(); ++j) {
        const std::uint32_t sj = slots[j];
        --degree[sj];
        xor_user[sj] ^= u;
        xor_pos[sj] ^= j;
        if (degree[sj] == 1) work.push_back(sj);
      }
    }
    current.clear();
    if (round_count > 0) {
      t.per_iteration_resolved.push_back(round_count);
      ++t.iterations;
    }
  }
  return t;
}

}  // namespace csa
