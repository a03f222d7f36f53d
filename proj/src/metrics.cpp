#include "csa/metrics.hpp"

namespace csa {

Metrics Metrics::from_trace(const DecodeTrace& trace, std::size_t slots_used,
                            std::size_t n_active) {
  Metrics m;
  if (slots_used > 0)
    m.throughput = static_cast<double>(trace.resolved_count) / static_cast<double>(slots_used);
  if (n_active > 0)
    m.plr = static_cast<double>(n_active - trace.resolved_count) / static_cast<double>(n_active);
  std::size_t tracked = 0;
  double sum = 0.0;
  for (std::int64_t s : trace.recovery_slot) {
    if (s >= 0) {
      sum += static_cast<double>(s);
      ++tracked;
    }
  }
  if (tracked > 0) m.mean_delay = sum / static_cast<double>(tracked);
  return m;
}

}  // namespace csa
