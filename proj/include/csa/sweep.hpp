// Monte Carlo harness: runs independent trials per load point and
// aggregates them into a CSV-ready report. Trial t of point i always uses
// the generator seeded with derive(derive(master, i), t), and results are
// reduced in trial order, so the report is identical at any thread count.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace csa {

struct TrialStats {
  double throughput = 0.0;
  double plr = 0.0;
  double iterations = 0.0;
  double delay = 0.0;
};

class Rng;
using TrialRunner = std::function<TrialStats(double load, Rng& rng)>;

struct SweepSpec {
  std::vector<double> loads;
  std::size_t trials = 100;
  std::uint64_t master_seed = 0;
  std::size_t threads = 1;
};

struct SweepPoint {
  double load = 0.0;
  std::size_t trials = 0;
  double throughput = 0.0;
  double throughput_ci95 = 0.0;  // half-width of the normal 95% interval
  double plr = 0.0;
  double plr_ci95 = 0.0;
  double mean_iterations = 0.0;
  double mean_delay = 0.0;
};

struct SweepReport {
  std::vector<SweepPoint> points;
};

SweepReport run_sweep(const SweepSpec& spec, const TrialRunner& runner);

// "0.5:1.5:0.1" -> {0.5, 0.6, ..., 1.5}; a single number is a one-point
// list. The end point is included up to a half-step of rounding slack.
std::vector<double> parse_load_range(const std::string& text);

}  // namespace csa
