#include "csa/sweep.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "csa/rng.hpp"

namespace csa {

SweepReport run_sweep(const SweepSpec& spec, const TrialRunner& runner) {
  if (spec.loads.empty()) throw std::invalid_argument("sweep: no load points");
  if (spec.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  const std::size_t threads = spec.threads < 1 ? 1 : spec.threads;

  SweepReport report;
  report.points.reserve(spec.loads.size());
  std::vector<TrialStats> results(spec.trials);

  for (std::size_t pi = 0; pi < spec.loads.size(); ++pi) {
    const double load = spec.loads[pi];
    const std::uint64_t point_seed = derive_seed(spec.master_seed, pi);

    auto run_range = [&](std::size_t begin, std::size_t end, std::exception_ptr& err) {
      try {
        for (std::size_t t = begin; t < end; ++t) {
          Rng rng(derive_seed(point_seed, t));
          results[t] = runner(load, rng);
        }
      } catch (...) {
        err = std::current_exception();
      }
    };

    if (threads == 1 || spec.trials == 1) {
      std::exception_ptr err;
      run_range(0, spec.trials, err);
      if (err) std::rethrow_exception(err);
    } else {
      const std::size_t used = std::min(threads, spec.trials);
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errs(used);
      const std::size_t chunk = (spec.trials + used - 1) / used;
      for (std::size_t w = 0; w < used; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(begin + chunk, spec.trials);
        pool.emplace_back(run_range, begin, end, std::ref(errs[w]));
      }
      for (auto& th : pool) th.join();
      for (auto& err : errs)
        if (err) std::rethrow_exception(err);
    }

    // Reduction in trial order regardless of which thread produced what.
    double st = 0, sp = 0, si = 0, sd = 0;
    for (const auto& r : results) {
      st += r.throughput;
      sp += r.plr;
      si += r.iterations;
      sd += r.delay;
    }
    const auto n = static_cast<double>(spec.trials);
    SweepPoint p;
    p.load = load;
    p.trials = spec.trials;
    p.throughput = st / n;
    p.plr = sp / n;
    p.mean_iterations = si / n;
    p.mean_delay = sd / n;
    if (spec.trials > 1) {
      double vt = 0, vp = 0;
      for (const auto& r : results) {
        vt += (r.throughput - p.throughput) * (r.throughput - p.throughput);
        vp += (r.plr - p.plr) * (r.plr - p.plr);
      }
      const double z = 1.959964;
      p.throughput_ci95 = z * std::sqrt(vt / (n - 1.0) / n);
      p.plr_ci95 = z * std::sqrt(vp / (n - 1.0) / n);
    }
    report.points.push_back(p);
  }
  return report;
}

std::vector<double> parse_load_range(const std::string& text) {
  auto parse_num = [&](std::string_view tok) {
    double v = 0.0;
    auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size())
      throw std::invalid_argument("load range: bad number in \"" + text + "\"");
    return v;
  };
  std::vector<std::string_view> parts;
  std::string_view sv = text;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = sv.find(':', pos);
    if (colon == std::string_view::npos) {
      parts.push_back(sv.substr(pos));
      break;
    }
    parts.push_back(sv.substr(pos, colon - pos));
    pos = colon + 1;
  }
  if (parts.size() == 1) return {parse_num(parts[0])};
  if (parts.size() != 3)
    throw std::invalid_argument("load range: expected G or G0:G1:step, got \"" + text + "\"");
  const double g0 = parse_num(parts[0]);
  const double g1 = parse_num(parts[1]);
  const double step = parse_num(parts[2]);
  if (!(step > 0.0)) throw std::invalid_argument("load range: step must be positive");
  if (g1 < g0) throw std::invalid_argument("load range: end below start");
  std::vector<double> loads;
  for (int i = 0;; ++i) {
    const double g = g0 + step * i;
    if (g > g1 + step * 0.5) break;
    loads.push_back(g);
  }
  return loads;
}

}  // namespace csa
