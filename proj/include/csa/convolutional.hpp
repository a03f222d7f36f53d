// Coupled contention periods: a user arriving in period t sends one replica
// in each of periods t .. t+d-1 instead of d replicas inside one frame. The
// receiver decodes after every period, so cleanup in early periods keeps
// feeding singletons into later ones and decoding proceeds as a wave.
#pragma once

#include <cstdint>
#include <vector>

#include "csa/metrics.hpp"
#include "csa/rng.hpp"

namespace csa {

struct ConvolutionalConfig {
  int repetition = 3;                  // replicas, one per consecutive period
  std::uint32_t slots_per_period = 0;  // M
  double mean_arrivals = 0.0;          // expected new users per period
  std::size_t num_periods = 0;         // periods with arrivals
  std::size_t population_factor = 10;  // arrivals ~ Binomial(factor*mean, 1/factor)
};

struct ConvolutionalPeriod {
  std::size_t arrivals = 0;
  std::size_t replicas = 0;      // replicas transmitted in the period
  double physical_load = 0.0;    // replicas / M
  std::size_t resolved = 0;      // of this period's cohort, by end of run
  double plr = 0.0;              // cohort loss rate
  double throughput = 0.0;       // cohort resolved / M
};

struct ConvolutionalResult {
  // One entry per arrival period; the d-1 drain periods after the last
  // arrival are simulated but reported only through `overall`.
  std::vector<ConvolutionalPeriod> periods;
  std::size_t total_arrivals = 0;
  std::size_t total_resolved = 0;
  Metrics overall;  // normalised over all (num_periods + d - 1) * M slots
};

ConvolutionalResult run_convolutional(const ConvolutionalConfig& config, Rng& rng);

}  // namespace csa
