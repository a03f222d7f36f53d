// Search for degree distributions with a high decoding threshold at a fixed
// rate. Differential evolution over the probability weights of degrees
// 2..max_degree; every candidate is projected back onto the feasible set
// (a probability vector whose mean degree equals 1/rate). Degree 1 is
// excluded: a replica sent once and lost to a collision can never be
// recovered, so degree-1 mass caps the threshold at zero.
#pragma once

#include <cstdint>

#include "csa/degree_distribution.hpp"

namespace csa {

struct OptimizerConfig {
  double target_rate = 1.0 / 3.0;  // in (0, 1/2]
  int max_degree = 8;              // >= 2 and >= 1/target_rate
  int population = 40;
  int generations = 80;
  double mutation_weight = 0.7;    // F in (0,2)
  double crossover_rate = 0.9;     // CR in [0,1]
  std::uint64_t seed = 0;
  double coarse_tol = 1e-2;        // threshold tolerance during evolution
  double final_tol = 1e-4;         // tolerance for the returned winner
};

struct OptimizeResult {
  DegreeDistribution distribution;
  double threshold = 0.0;  // evaluated at final_tol
};

OptimizeResult optimize_distribution(const OptimizerConfig& config);

}  // namespace csa
