#include "csa/optimizer.hpp"

#include <map>
#include <stdexcept>
#include <vector>

#include "csa/density_evolution.hpp"
#include "csa/rng.hpp"

namespace csa {
namespace {

// Weights x[j] correspond to degrees j+2. Projection: clip, normalise, then
// mix toward a unit mass at the max (or min) degree until the mean degree
// matches the target. The mixing coefficient is exact, so a projected point
// is feasible up to rounding.
void project(std::vector<double>& x, double mean_target, int max_degree) {
  const std::size_t dims = x.size();
  double sum = 0.0;
  for (double& v : x) {
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (sum <= 0.0) {
    for (double& v : x) v = 1.0 / static_cast<double>(dims);
  } else {
    for (double& v : x) v /= sum;
  }
  if (dims == 1) {
    x[0] = 1.0;
    return;
  }
  double mu = 0.0;
  for (std::size_t j = 0; j < dims; ++j) mu += static_cast<double>(j + 2) * x[j];
  if (mu < mean_target) {
    const double t = (mean_target - mu) / (static_cast<double>(max_degree) - mu);
    for (double& v : x) v *= 1.0 - t;
    x[dims - 1] += t;
  } else if (mu > mean_target) {
    const double t = (mu - mean_target) / (mu - 2.0);
    for (double& v : x) v *= 1.0 - t;
    x[0] += t;
  }
  double s = 0.0;
  for (double v : x) s += v;
  for (double& v : x) v /= s;  // scaling leaves the mean of the weights intact
}

DegreeDistribution to_distribution(const std::vector<double>& x) {
  std::map<int, double> entries;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] > 0.0) entries[static_cast<int>(j) + 2] = x[j];
  return DegreeDistribution(std::move(entries));
}

}  // namespace

OptimizeResult optimize_distribution(const OptimizerConfig& cfg) {
  if (!(cfg.target_rate > 0.0) || cfg.target_rate > 0.5)
    throw std::invalid_argument("optimizer: target rate must be in (0, 1/2]");
  if (cfg.max_degree < 2) throw std::invalid_argument("optimizer: max degree must be >= 2");
  const double mean_target = 1.0 / cfg.target_rate;
  if (mean_target > static_cast<double>(cfg.max_degree) + 1e-9)
    throw std::invalid_argument(
        "optimizer: infeasible, mean degree 1/rate exceeds the max degree");
  if (cfg.population < 4) throw std::invalid_argument("optimizer: population must be >= 4");
  if (cfg.generations < 1) throw std::invalid_argument("optimizer: generations must be >= 1");
  if (!(cfg.mutation_weight > 0.0) || cfg.mutation_weight >= 2.0)
    throw std::invalid_argument("optimizer: mutation weight must be in (0,2)");
  if (!(cfg.crossover_rate >= 0.0) || cfg.crossover_rate > 1.0)
    throw std::invalid_argument("optimizer: crossover rate must be in [0,1]");
  if (!(cfg.coarse_tol > 0.0) || !(cfg.final_tol > 0.0))
    throw std::invalid_argument("optimizer: tolerances must be positive");

  const std::size_t dims = static_cast<std::size_t>(cfg.max_degree) - 1;
  const auto pop_size = static_cast<std::size_t>(cfg.population);
  Rng rng(cfg.seed);

  auto fitness = [&](const std::vector<double>& x) {
    return threshold(to_distribution(x), cfg.coarse_tol);
  };

  std::vector<std::vector<double>> pop(pop_size, std::vector<double>(dims));
  std::vector<double> fit(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) {
    for (double& v : pop[i]) v = rng.next_double();
    project(pop[i], mean_target, cfg.max_degree);
    fit[i] = fitness(pop[i]);
  }

  std::vector<double> trial(dims);
  for (int gen = 0; gen < cfg.generations; ++gen) {
    for (std::size_t i = 0; i < pop_size; ++i) {
      std::size_t a, b, c;
      do a = rng.next_below(pop_size); while (a == i);
      do b = rng.next_below(pop_size); while (b == i || b == a);
      do c = rng.next_below(pop_size); while (c == i || c == a || c == b);
      const std::size_t jrand = rng.next_below(dims);
      for (std::size_t j = 0; j < dims; ++j) {
        const bool cross = rng.next_double() < cfg.crossover_rate || j == jrand;
        trial[j] = cross ? pop[a][j] + cfg.mutation_weight * (pop[b][j] - pop[c][j])
                         : pop[i][j];
      }
      project(trial, mean_target, cfg.max_degree);
      const double tf = fitness(trial);
      if (tf >= fit[i]) {
        pop[i] = trial;
        fit[i] = tf;
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < pop_size; ++i)
    if (fit[i] > fit[best]) best = i;
  DegreeDistribution dist = to_distribution(pop[best]);
  const double refined = threshold(dist, cfg.final_tol);
  return {std::move(dist), refined};
}

}  // namespace csa
