#include "csa/convolutional.hpp"

#include <cmath>
#include <stdexcept>

#include "csa/peeling.hpp"
#include "csa/traffic.hpp"

namespace csa {

ConvolutionalResult run_convolutional(const ConvolutionalConfig& cfg, Rng& rng) {
  if (cfg.repetition < 1)
    throw std::invalid_argument("convolutional: repetition must be >= 1");
  if (cfg.slots_per_period == 0)
    throw std::invalid_argument("convolutional: slots_per_period must be positive");
  if (!(cfg.mean_arrivals > 0.0))
    throw std::invalid_argument("convolutional: mean arrivals must be positive");
  const auto d = static_cast<std::size_t>(cfg.repetition);
  if (cfg.num_periods < d)
    throw std::invalid_argument("convolutional: need at least `repetition` periods");
  if (cfg.population_factor < 1)
    throw std::invalid_argument("convolutional: population factor must be >= 1");

  const std::uint32_t m = cfg.slots_per_period;
  const std::size_t total_periods = cfg.num_periods + d - 1;  // drain tail included
  auto population =
      static_cast<std::size_t>(std::ceil(cfg.mean_arrivals * cfg.population_factor));
  if (population == 0) population = 1;
  const double p_arrive = cfg.mean_arrivals / static_cast<double>(population);

  PeelingState st;
  for (std::size_t t = 0; t < total_periods; ++t)
    for (std::uint32_t s = 0; s < m; ++s) st.add_slot();

  ConvolutionalResult res;
  res.periods.resize(cfg.num_periods);
  std::vector<std::size_t> replicas_in_period(total_periods, 0);
  std::vector<std::size_t> cohort_of;         // user -> arrival period
  std::vector<std::int64_t> resolve_period;   // user -> period of resolution, -1 if lost
  std::vector<std::vector<std::uint32_t>> pending(total_periods);  // period -> edges (user, slot) flattened
  std::vector<std::vector<std::uint32_t>> pending_user(total_periods);

  std::vector<std::uint32_t> newly;
  for (std::size_t t = 0; t < total_periods; ++t) {
    if (t < cfg.num_periods) {
      const std::size_t arrivals = draw_active_count(population, p_arrive, rng);
      res.periods[t].arrivals = arrivals;
      res.total_arrivals += arrivals;
      for (std::size_t a = 0; a < arrivals; ++a) {
        const std::uint32_t u = st.add_user();
        cohort_of.push_back(t);
        resolve_period.push_back(-1);
        // One replica in each of periods t .. t+d-1, uniform slot inside.
        for (std::size_t j = 0; j < d; ++j) {
          const std::size_t period = t + j;
          const auto slot = static_cast<std::uint32_t>(rng.next_below(m));
          ++replicas_in_period[period];
          pending_user[period].push_back(u);
          pending[period].push_back(static_cast<std::uint32_t>(period * m) + slot);
        }
      }
    }
    // Receive period t: edges scheduled for it materialise, then peel. A
    // replica of a user resolved in an earlier period is cancelled on
    // arrival inside add_edge.
    for (std::size_t e = 0; e < pending[t].size(); ++e)
      st.add_edge(pending_user[t][e], pending[t][e]);
    pending[t].clear();
    pending_user[t].clear();
    newly.clear();
    st.settle(&newly);
    for (std::uint32_t u : newly) resolve_period[u] = static_cast<std::int64_t>(t);
  }

  res.total_resolved = st.resolved_count();
  DecodeTrace trace = st.trace();
  // recovery_slot holds the delay since the cohort's first slot: everything
  // a period delivers becomes known at that period's last slot.
  for (std::size_t u = 0; u < cohort_of.size(); ++u) {
    const std::size_t t = cohort_of[u];
    res.periods[t].resolved += trace.resolved[u] ? 1 : 0;
    if (trace.resolved[u])
      trace.recovery_slot[u] =
          static_cast<std::int64_t>((static_cast<std::size_t>(resolve_period[u]) - t) * m + m - 1);
  }
  for (std::size_t t = 0; t < cfg.num_periods; ++t) {
    auto& p = res.periods[t];
    p.replicas = replicas_in_period[t];
    p.physical_load = static_cast<double>(p.replicas) / static_cast<double>(m);
    p.throughput = static_cast<double>(p.resolved) / static_cast<double>(m);
    p.plr = p.arrivals > 0
                ? static_cast<double>(p.arrivals - p.resolved) / static_cast<double>(p.arrivals)
                : 0.0;
  }
  res.overall = Metrics::from_trace(trace, total_periods * m, res.total_arrivals);
  return res;
}

}  // namespace csa
