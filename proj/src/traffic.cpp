#include "csa/traffic.hpp"

#include <cmath>
#include <stdexcept>

namespace csa {
namespace {

// Draws `count` distinct values in [0,num_slots) from `next()`, a callable
// returning uniform values in that range. Linear scan for small counts, a
// mark vector once that would degenerate.
template <class Next>
void fill_distinct(std::uint32_t count, std::uint32_t num_slots, Next next,
                   std::vector<std::uint32_t>& out) {
  out.clear();
  if (count <= 32) {
    while (out.size() < count) {
      const std::uint32_t s = next();
      bool seen = false;
      for (std::uint32_t t : out)
        if (t == s) { seen = true; break; }
      if (!seen) out.push_back(s);
    }
    return;
  }
  std::vector<std::uint8_t> taken(num_slots, 0);
  while (out.size() < count) {
    const std::uint32_t s = next();
    if (taken[s]) continue;
    taken[s] = 1;
    out.push_back(s);
  }
}

}  // namespace

TrafficConfig::TrafficConfig(std::size_t n, double p_a, std::uint32_t m, DegreeDistribution dist)
    : population(n), activation_probability(p_a), num_slots(m), distribution(std::move(dist)) {
  if (num_slots == 0) throw std::invalid_argument("traffic config: num_slots must be positive");
  if (!(activation_probability >= 0.0) || activation_probability > 1.0)
    throw std::invalid_argument("traffic config: activation probability must be in [0,1]");
  if (static_cast<std::uint32_t>(distribution.max_degree()) > num_slots)
    throw std::invalid_argument("traffic config: max degree exceeds slot count");
}

double TrafficConfig::logical_load() const {
  return activation_probability * static_cast<double>(population) / num_slots;
}

double TrafficConfig::physical_load() const {
  return logical_load() * distribution.mean_degree();
}

TrafficConfig TrafficConfig::from_load(double load, std::uint32_t num_slots,
                                       DegreeDistribution dist, std::size_t population_factor) {
  if (!(load > 0.0)) throw std::invalid_argument("traffic config: load must be positive");
  if (population_factor < 1)
    throw std::invalid_argument("traffic config: population factor must be >= 1");
  const double target = load * num_slots;
  auto population = static_cast<std::size_t>(std::ceil(target * population_factor));
  if (population == 0) population = 1;
  const double p_a = target / static_cast<double>(population);
  return TrafficConfig(population, p_a, num_slots, std::move(dist));
}

std::size_t draw_active_count(std::size_t population, double activation_probability, Rng& rng) {
  if (!(activation_probability >= 0.0) || activation_probability > 1.0)
    throw std::invalid_argument("draw_active_count: probability must be in [0,1]");
  std::size_t count = 0;
  for (std::size_t i = 0; i < population; ++i)
    count += rng.next_bernoulli(activation_probability) ? 1 : 0;
  return count;
}

ContentionGraph build_graph(std::size_t n_active, std::uint32_t num_slots,
                            const DegreeDistribution& dist, Rng& rng) {
  if (num_slots == 0) throw std::invalid_argument("build_graph: num_slots must be positive");
  if (static_cast<std::uint32_t>(dist.max_degree()) > num_slots)
    throw std::invalid_argument("build_graph: max degree exceeds slot count");
  std::vector<UserRecord> users(n_active);
  for (std::size_t i = 0; i < n_active; ++i) {
    const auto d = static_cast<std::uint32_t>(dist.sample(rng));
    users[i].user_id = i;
    fill_distinct(d, num_slots,
                  [&] { return static_cast<std::uint32_t>(rng.next_below(num_slots)); },
                  users[i].replica_slots);
  }
  return ContentionGraph(num_slots, std::move(users));
}

std::vector<std::uint32_t> replica_slots_from_seed(std::uint64_t user_seed,
                                                   std::uint32_t replicas,
                                                   std::uint32_t num_slots) {
  if (num_slots == 0)
    throw std::invalid_argument("replica_slots_from_seed: num_slots must be positive");
  if (replicas > num_slots)
    throw std::invalid_argument("replica_slots_from_seed: more replicas than slots");
  const std::uint64_t base = mix64(user_seed ^ mix64(num_slots));
  const std::uint64_t bound = num_slots;
  const std::uint64_t reject = (0 - bound) % bound;
  std::uint64_t counter = 0;
  auto next = [&]() -> std::uint32_t {
    for (;;) {
      const std::uint64_t h = mix64(base + kGoldenGamma * ++counter);
      if (h >= reject) return static_cast<std::uint32_t>(h % bound);
    }
  };
  std::vector<std::uint32_t> out;
  fill_distinct(replicas, num_slots, next, out);
  return out;
}

}  // namespace csa
