#include "csa/frameless.hpp"

#include <stdexcept>

#include "csa/peeling.hpp"

namespace csa {

FramelessResult run_frameless(const FramelessConfig& config, Rng& rng) {
  if (config.n_active < 1)
    throw std::invalid_argument("frameless: need at least one active user");
  if (!(config.beta > 0.0) || config.beta > static_cast<double>(config.n_active))
    throw std::invalid_argument("frameless: beta must be in (0, n_active]");
  if (config.max_slots < 1) throw std::invalid_argument("frameless: max_slots must be >= 1");
  if (!(config.term_fraction > 0.0) || config.term_fraction > 1.0)
    throw std::invalid_argument("frameless: termination fraction must be in (0,1]");
  if (config.term_throughput && !(*config.term_throughput > 0.0))
    throw std::invalid_argument("frameless: termination throughput must be positive");

  const std::size_t n = config.n_active;
  const double p_tx = config.beta / static_cast<double>(n);

  PeelingState st;
  for (std::size_t u = 0; u < n; ++u) st.add_user();

  FramelessResult res;
  res.trace.recovery_slot.assign(n, -1);
  res.resolved_fraction.reserve(config.max_slots);
  res.inst_throughput.reserve(config.max_slots);

  std::vector<std::uint32_t> newly;
  std::size_t slots = 0;
  while (slots < config.max_slots) {
    const std::uint32_t slot = st.add_slot();
    // Every user draws, resolved ones included: a resolved user still
    // transmits (it gets no feedback mid-period) but its replica is
    // cancelled on arrival.
    for (std::size_t u = 0; u < n; ++u)
      if (rng.next_bernoulli(p_tx)) st.add_edge(static_cast<std::uint32_t>(u), slot);
    newly.clear();
    st.settle(&newly);
    ++slots;
    for (std::uint32_t u : newly) res.trace.recovery_slot[u] = static_cast<std::int64_t>(slot);

    const double fraction =
        static_cast<double>(st.resolved_count()) / static_cast<double>(n);
    const double inst =
        static_cast<double>(st.resolved_count()) / static_cast<double>(slots);
    res.resolved_fraction.push_back(fraction);
    res.inst_throughput.push_back(inst);
    if (fraction >= config.term_fraction) break;
    if (config.term_throughput && inst >= *config.term_throughput) break;
  }

  res.terminated_slots = slots;
  const DecodeTrace snapshot = st.trace();
  res.trace.resolved = snapshot.resolved;
  res.trace.resolved_count = snapshot.resolved_count;
  res.trace.iterations = snapshot.iterations;
  res.trace.per_iteration_resolved = snapshot.per_iteration_resolved;
  res.metrics = Metrics::from_trace(res.trace, slots, n);
  return res;
}

}  // namespace csa
