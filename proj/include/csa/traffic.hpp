// Traffic generation: who is active in a frame and where their replicas go.
#pragma once

#include <cstdint>
#include <vector>

#include "csa/contention_graph.hpp"
#include "csa/degree_distribution.hpp"
#include "csa/rng.hpp"

namespace csa {

// Population model of one frame: N users, each independently active with
// probability p_a, M slots. Logical load G = p_a * N / M.
struct TrafficConfig {
  std::size_t population;           // N
  double activation_probability;    // p_a
  std::uint32_t num_slots;          // M
  DegreeDistribution distribution;

  TrafficConfig(std::size_t n, double p_a, std::uint32_t m, DegreeDistribution dist);

  double logical_load() const;
  double physical_load() const;  // logical_load * mean_degree

  // Picks (N, p_a) realizing logical load G over M slots, with
  // N = ceil(G * M * population_factor).
  static TrafficConfig from_load(double load, std::uint32_t num_slots,
                                 DegreeDistribution dist,
                                 std::size_t population_factor = 10);
};

// Number of active users: one Bernoulli(p) per member of the population.
std::size_t draw_active_count(std::size_t population, double activation_probability, Rng& rng);

// Frame graph for n_active users: each samples a degree d from dist and
// places d replicas in distinct uniform slots. user_id is the user index.
ContentionGraph build_graph(std::size_t n_active, std::uint32_t num_slots,
                            const DegreeDistribution& dist, Rng& rng);

// Replica positions as a pure function of (user_seed, num_slots): a
// counter-mode hash stream reduced to [0,num_slots) by rejection, with
// duplicate slots skipped. Anyone holding the seed reproduces the pattern
// without a side channel, which is what lets a receiver cancel replicas it
// has never demodulated.
std::vector<std::uint32_t> replica_slots_from_seed(std::uint64_t user_seed,
                                                   std::uint32_t replicas,
                                                   std::uint32_t num_slots);

}  // namespace csa
