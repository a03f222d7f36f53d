// Frameless operation: no frame boundary, every backlogged user transmits
// in each new slot with probability beta / n_active, the receiver peels
// after every slot and ends the contention period when a termination rule
// fires.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "csa/metrics.hpp"
#include "csa/rng.hpp"

namespace csa {

struct FramelessConfig {
  std::size_t n_active = 0;     // backlogged users at the start of the period
  double beta = 3.1;            // target mean slot degree
  std::size_t max_slots = 0;    // hard cap on the period length
  // Termination rules, checked after the peel that follows each slot.
  std::optional<double> term_throughput;  // instantaneous throughput reached
  double term_fraction = 0.9;             // resolved fraction reached
};

struct FramelessResult {
  std::vector<double> resolved_fraction;   // after each slot
  std::vector<double> inst_throughput;     // resolved / slots elapsed
  std::size_t terminated_slots = 0;        // slots actually spent
  Metrics metrics;
  DecodeTrace trace;  // recovery_slot[u] = slot index at which u resolved
};

FramelessResult run_frameless(const FramelessConfig& config, Rng& rng);

}  // namespace csa
