// Shared generators for property tests.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "csa/contention_graph.hpp"
#include "csa/degree_distribution.hpp"
#include "csa/rng.hpp"

namespace testutil {

// Random distribution with support inside [min_d, max_d].
inline csa::DegreeDistribution random_distribution(csa::Rng& rng, int min_d = 2, int max_d = 8) {
  std::vector<std::pair<int, double>> picks;
  double sum = 0.0;
  for (int d = min_d; d <= max_d; ++d) {
    if (rng.next_double() < 0.5) {
      const double w = rng.next_double() + 1e-3;
      picks.emplace_back(d, w);
      sum += w;
    }
  }
  if (picks.empty()) {
    const int d = min_d + static_cast<int>(rng.next_below(max_d - min_d + 1));
    picks.emplace_back(d, 1.0);
    sum = 1.0;
  }
  std::map<int, double> entries;
  for (const auto& [d, w] : picks) entries[d] = w / sum;
  return csa::DegreeDistribution(std::move(entries));
}

// Random graph with a handful of slots and users, degrees 1..min(M,4).
inline csa::ContentionGraph random_graph(csa::Rng& rng, std::uint32_t max_slots = 64,
                                         std::size_t max_users = 80) {
  const auto m = static_cast<std::uint32_t>(4 + rng.next_below(max_slots - 3));
  const std::size_t n = rng.next_below(max_users + 1);
  const std::uint32_t dmax = m < 4 ? m : 4;
  std::vector<csa::UserRecord> users(n);
  for (std::size_t u = 0; u < n; ++u) {
    const auto d = static_cast<std::uint32_t>(1 + rng.next_below(dmax));
    users[u].user_id = u;
    auto& slots = users[u].replica_slots;
    while (slots.size() < d) {
      const auto s = static_cast<std::uint32_t>(rng.next_below(m));
      bool seen = false;
      for (std::uint32_t t : slots)
        if (t == s) { seen = true; break; }
      if (!seen) slots.push_back(s);
    }
  }
  return csa::ContentionGraph(m, std::move(users));
}

}  // namespace testutil
