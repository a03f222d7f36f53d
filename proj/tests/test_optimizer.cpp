#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "csa/density_evolution.hpp"
#include "csa/optimizer.hpp"

using csa::OptimizerConfig;

namespace {

OptimizerConfig small_config(double rate, int max_degree, std::uint64_t seed = 0) {
  OptimizerConfig cfg;
  cfg.target_rate = rate;
  cfg.max_degree = max_degree;
  cfg.population = 24;
  cfg.generations = 30;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("degenerate searches collapse to the regular scheme") {
  // rate 1/2 with max degree 2: the only feasible point is all mass at 2
  auto r = csa::optimize_distribution(small_config(0.5, 2));
  CHECK(r.distribution.entries().size() == 1);
  CHECK(r.distribution.entries().at(2) == doctest::Approx(1.0));
  CHECK(r.threshold == doctest::Approx(0.5).epsilon(1e-3));

  // rate 1/3 with max degree 3: mean 3 forces all mass at 3
  auto r3 = csa::optimize_distribution(small_config(1.0 / 3.0, 3));
  CHECK(r3.distribution.entries().at(3) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r3.threshold == doctest::Approx(0.8184695).epsilon(2e-3));
}

TEST_CASE("rate-1/3 search beats the regular scheme and respects the bound") {
  auto res = csa::optimize_distribution(small_config(1.0 / 3.0, 8, 7));
  const auto& entries = res.distribution.entries();

  double mean = 0.0, sum = 0.0;
  for (const auto& [d, p] : entries) {
    CHECK(d >= 2);
    CHECK(d <= 8);
    mean += d * p;
    sum += p;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mean == doctest::Approx(3.0).epsilon(1e-6));

  // dominance over the regular scheme of the same rate, and the hard ceiling
  CHECK(res.threshold >= 0.8184695 - 1e-3);
  CHECK(res.threshold <= csa::bound_root(1.0 / 3.0) + 1e-3);
  // a healthy search lands well above regular; frozen optimized mixes reach ~0.94
  CHECK(res.threshold > 0.85);
}

TEST_CASE("search is deterministic in the seed") {
  auto a = csa::optimize_distribution(small_config(1.0 / 3.0, 8, 11));
  auto b = csa::optimize_distribution(small_config(1.0 / 3.0, 8, 11));
  CHECK(a.distribution.to_string() == b.distribution.to_string());
  CHECK(a.threshold == b.threshold);
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(csa::optimize_distribution(small_config(1.0 / 3.0, 2)),
                  std::invalid_argument);  // 1/R = 3 > max degree 2
  CHECK_THROWS_AS(csa::optimize_distribution(small_config(0.6, 8)), std::invalid_argument);
  CHECK_THROWS_AS(csa::optimize_distribution(small_config(0.0, 8)), std::invalid_argument);

  auto bad = small_config(0.5, 4);
  bad.population = 2;
  CHECK_THROWS_AS(csa::optimize_distribution(bad), std::invalid_argument);

  auto badf = small_config(0.5, 4);
  badf.mutation_weight = 2.5;
  CHECK_THROWS_AS(csa::optimize_distribution(badf), std::invalid_argument);

  auto badcr = small_config(0.5, 4);
  badcr.crossover_rate = 1.5;
  CHECK_THROWS_AS(csa::optimize_distribution(badcr), std::invalid_argument);
}
