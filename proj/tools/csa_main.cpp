// csa: batch front end. Every subcommand prints CSV to stdout (or --out) and
// exits nonzero with a one-line diagnostic on invalid input. Identical flags
// and seed give byte-identical output at any --threads value.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csa/component_code.hpp"
#include "csa/convolutional.hpp"
#include "csa/csv.hpp"
#include "csa/degree_distribution.hpp"
#include "csa/density_evolution.hpp"
#include "csa/frameless.hpp"
#include "csa/fsa_upgrade.hpp"
#include "csa/metrics.hpp"
#include "csa/optimizer.hpp"
#include "csa/peeling.hpp"
#include "csa/rng.hpp"
#include "csa/sweep.hpp"
#include "csa/traffic.hpp"

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot open output file " + out_path);
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("failed writing output file " + out_path);
}

// Shared flags of the Monte Carlo subcommands.
struct RunFlags {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string out;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--threads", f.threads, "Worker threads (result-invariant)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}));
  cmd->add_option("--out", f.out, "Write CSV here instead of stdout");
}

void check_loads(const std::vector<double>& loads) {
  for (double g : loads)
    if (!(g > 0.0)) throw CLI::ValidationError("--load", "load points must be positive");
}

struct SimulateOpts {
  std::string dist;
  std::uint32_t frame = 0;
  std::string load;
  std::size_t trials = 0;
  std::size_t population_factor = 10;
  RunFlags run;
};

void run_simulate(const SimulateOpts& o) {
  const csa::DegreeDistribution dist = csa::DegreeDistribution::parse(o.dist);
  const auto loads = csa::parse_load_range(o.load);
  check_loads(loads);
  const std::uint32_t m = o.frame;
  const std::size_t factor = o.population_factor;

  csa::SweepSpec spec{loads, o.trials, o.run.seed, o.run.threads};
  auto runner = [&dist, m, factor](double load, csa::Rng& rng) {
    const double target = load * m;
    auto population = static_cast<std::size_t>(std::ceil(target * static_cast<double>(factor)));
    if (population == 0) population = 1;
    const double p_a = target / static_cast<double>(population);
    const std::size_t n_active = csa::draw_active_count(population, p_a, rng);
    const csa::ContentionGraph graph = csa::build_graph(n_active, m, dist, rng);
    const csa::DecodeTrace trace = csa::peel(graph);
    csa::TrialStats s;
    s.throughput = static_cast<double>(trace.resolved_count) / m;
    s.plr = n_active > 0 ? static_cast<double>(n_active - trace.resolved_count) /
                               static_cast<double>(n_active)
                         : 0.0;
    s.iterations = static_cast<double>(trace.iterations);
    // Framed operation delivers everything when the frame ends.
    s.delay = trace.resolved_count > 0 ? static_cast<double>(m - 1) : 0.0;
    return s;
  };
  const csa::SweepReport report = csa::run_sweep(spec, runner);
  std::ostringstream buf;
  csa::write_csv(report, buf);
  emit(buf.str(), o.run.out);
}

struct SimulateCodedOpts {
  std::string ensemble;
  std::uint32_t frame_segments = 0;  // contention period length in segment slots
  std::string load;
  std::size_t trials = 0;
  std::size_t population_factor = 10;
  RunFlags run;
};

void run_simulate_coded(const SimulateCodedOpts& o) {
  const csa::CodeEnsemble ensemble = csa::CodeEnsemble::load_file(o.ensemble);
  const auto k = static_cast<std::uint32_t>(ensemble.dimension());
  if (o.frame_segments % k != 0)
    throw std::invalid_argument("simulate-coded: frame (" + std::to_string(o.frame_segments) +
                                " segments) must be a multiple of the code dimension k=" +
                                std::to_string(k));
  const std::uint32_t segments = o.frame_segments;
  const std::uint32_t m = segments / k;  // packet durations, the load/throughput unit
  const auto loads = csa::parse_load_range(o.load);
  check_loads(loads);
  const std::size_t factor = o.population_factor;

  csa::SweepSpec spec{loads, o.trials, o.run.seed, o.run.threads};
  auto runner = [&ensemble, m, segments, factor](double load, csa::Rng& rng) {
    const double target = load * m;
    auto population = static_cast<std::size_t>(std::ceil(target * static_cast<double>(factor)));
    if (population == 0) population = 1;
    const double p_a = target / static_cast<double>(population);
    const std::size_t n_active = csa::draw_active_count(population, p_a, rng);

    std::vector<csa::UserRecord> users(n_active);
    std::vector<csa::ComponentCode> codes;
    codes.reserve(n_active);
    for (std::size_t u = 0; u < n_active; ++u) {
      const std::size_t ci = ensemble.sample_index(rng);
      const csa::ComponentCode& code = ensemble.code(ci);
      codes.push_back(code);
      users[u].user_id = u;
      auto& slots = users[u].replica_slots;
      while (slots.size() < code.length()) {
        const auto s = static_cast<std::uint32_t>(rng.next_below(segments));
        bool seen = false;
        for (std::uint32_t t : slots)
          if (t == s) { seen = true; break; }
        if (!seen) slots.push_back(s);
      }
    }
    const csa::ContentionGraph graph(segments, std::move(users));
    const csa::DecodeTrace trace = csa::peel_generalized(graph, codes);
    csa::TrialStats s;
    s.throughput = static_cast<double>(trace.resolved_count) / m;
    s.plr = n_active > 0 ? static_cast<double>(n_active - trace.resolved_count) /
                               static_cast<double>(n_active)
                         : 0.0;
    s.iterations = static_cast<double>(trace.iterations);
    s.delay = trace.resolved_count > 0 ? static_cast<double>(m - 1) : 0.0;
    return s;
  };
  const csa::SweepReport report = csa::run_sweep(spec, runner);
  std::ostringstream buf;
  csa::write_csv(report, buf);
  emit(buf.str(), o.run.out);
}

struct ThresholdOpts {
  std::string dist;
  double tol = 1e-4;
  std::string out;
};

void run_threshold(const ThresholdOpts& o) {
  const csa::DegreeDistribution dist = csa::DegreeDistribution::parse(o.dist);
  const double g_star = csa::threshold(dist, o.tol);
  const double rate = dist.rate();
  const double bound = rate < 1.0 ? csa::bound_root(rate) : 0.0;
  std::ostringstream buf;
  buf << "dist,rate,threshold,bound\n";
  buf << dist.to_string() << ',' << csa::format_number(rate) << ','
      << csa::format_number(g_star) << ',' << csa::format_number(bound) << '\n';
  emit(buf.str(), o.out);
}

struct BoundOpts {
  double rate = 0.0;
  std::string out;
};

void run_bound(const BoundOpts& o) {
  const double bound = csa::bound_root(o.rate);
  std::ostringstream buf;
  buf << "rate,bound\n" << csa::format_number(o.rate) << ',' << csa::format_number(bound) << '\n';
  emit(buf.str(), o.out);
}

struct OptimizeOpts {
  double rate = 0.0;
  int max_degree = 0;
  int generations = 80;
  int population = 40;
  std::uint64_t seed = 0;
  std::string out;
};

void run_optimize(const OptimizeOpts& o) {
  csa::OptimizerConfig cfg;
  cfg.target_rate = o.rate;
  cfg.max_degree = o.max_degree;
  cfg.generations = o.generations;
  cfg.population = o.population;
  cfg.seed = o.seed;
  const csa::OptimizeResult res = csa::optimize_distribution(cfg);
  const double bound = csa::bound_root(o.rate);
  std::ostringstream buf;
  buf << "dist,rate,threshold,bound\n";
  buf << res.distribution.to_string() << ',' << csa::format_number(o.rate) << ','
      << csa::format_number(res.threshold) << ',' << csa::format_number(bound) << '\n';
  emit(buf.str(), o.out);
}

struct FramelessOpts {
  std::size_t users = 0;
  double beta = 3.1;
  double term_fraction = 0.9;
  double term_throughput = 0.0;  // 0 disables the rule
  std::size_t max_slots = 0;     // 0 means 4x users
  std::size_t trials = 0;
  std::string curve_out;
  RunFlags run;
};

void run_frameless_cmd(const FramelessOpts& o) {
  csa::FramelessConfig cfg;
  cfg.n_active = o.users;
  cfg.beta = o.beta;
  cfg.term_fraction = o.term_fraction;
  if (o.term_throughput > 0.0) cfg.term_throughput = o.term_throughput;
  cfg.max_slots = o.max_slots > 0 ? o.max_slots : 4 * o.users;
  if (o.trials < 1) throw std::invalid_argument("frameless: trials must be >= 1");

  // Trials share the seed-derivation scheme of run_sweep (single point 0).
  const std::uint64_t point_seed = csa::derive_seed(o.run.seed, 0);
  double sum_tp = 0, sum_tp2 = 0, sum_plr = 0, sum_plr2 = 0, sum_slots = 0, sum_delay = 0;
  std::vector<double> curve_fraction;  // running per-slot means
  std::vector<double> curve_inst;
  std::vector<std::size_t> curve_n;
  for (std::size_t t = 0; t < o.trials; ++t) {
    csa::Rng rng(csa::derive_seed(point_seed, t));
    const csa::FramelessResult res = csa::run_frameless(cfg, rng);
    sum_tp += res.metrics.throughput;
    sum_tp2 += res.metrics.throughput * res.metrics.throughput;
    sum_plr += res.metrics.plr;
    sum_plr2 += res.metrics.plr * res.metrics.plr;
    sum_slots += static_cast<double>(res.terminated_slots);
    sum_delay += res.metrics.mean_delay;
    if (!o.curve_out.empty()) {
      if (res.resolved_fraction.size() > curve_fraction.size()) {
        curve_fraction.resize(res.resolved_fraction.size(), 0.0);
        curve_inst.resize(res.resolved_fraction.size(), 0.0);
        curve_n.resize(res.resolved_fraction.size(), 0);
      }
      for (std::size_t s = 0; s < res.resolved_fraction.size(); ++s) {
        curve_fraction[s] += res.resolved_fraction[s];
        curve_inst[s] += res.inst_throughput[s];
        curve_n[s] += 1;
      }
    }
  }
  const auto n = static_cast<double>(o.trials);
  const double mean_tp = sum_tp / n;
  const double mean_plr = sum_plr / n;
  auto ci = [n](double sum, double sum2, double mean) {
    if (n < 2) return 0.0;
    const double var = (sum2 - n * mean * mean) / (n - 1.0);
    return 1.959964 * std::sqrt((var > 0 ? var : 0) / n);
  };
  std::ostringstream buf;
  buf << "users,beta,trials,mean_slots,throughput,throughput_ci95,plr,plr_ci95,mean_delay\n";
  buf << o.users << ',' << csa::format_number(o.beta) << ',' << o.trials << ','
      << csa::format_number(sum_slots / n) << ',' << csa::format_number(mean_tp) << ','
      << csa::format_number(ci(sum_tp, sum_tp2, mean_tp)) << ',' << csa::format_number(mean_plr)
      << ',' << csa::format_number(ci(sum_plr, sum_plr2, mean_plr)) << ','
      << csa::format_number(sum_delay / n) << '\n';
  emit(buf.str(), o.run.out);

  if (!o.curve_out.empty()) {
    std::ostringstream cbuf;
    cbuf << "slot,trials_running,resolved_fraction,inst_throughput\n";
    for (std::size_t s = 0; s < curve_fraction.size(); ++s) {
      const auto cn = static_cast<double>(curve_n[s]);
      cbuf << s << ',' << curve_n[s] << ',' << csa::format_number(curve_fraction[s] / cn) << ','
           << csa::format_number(curve_inst[s] / cn) << '\n';
    }
    emit(cbuf.str(), o.curve_out);
  }
}

struct ConvolutionalOpts {
  int d = 3;
  std::uint32_t frame = 0;
  double load = 0.0;
  std::size_t periods = 0;
  std::size_t trials = 0;
  std::size_t population_factor = 10;
  RunFlags run;
};

void run_convolutional_cmd(const ConvolutionalOpts& o) {
  if (!(o.load > 0.0)) throw std::invalid_argument("convolutional: load must be positive");
  if (o.trials < 1) throw std::invalid_argument("convolutional: trials must be >= 1");
  csa::ConvolutionalConfig cfg;
  cfg.repetition = o.d;
  cfg.slots_per_period = o.frame;
  cfg.mean_arrivals = o.load * o.frame;
  cfg.num_periods = o.periods;
  cfg.population_factor = o.population_factor;

  std::vector<double> arr(o.periods, 0.0), phy(o.periods, 0.0), tp(o.periods, 0.0),
      plr(o.periods, 0.0);
  double overall_tp = 0, overall_plr = 0, overall_delay = 0;
  const std::uint64_t point_seed = csa::derive_seed(o.run.seed, 0);
  for (std::size_t t = 0; t < o.trials; ++t) {
    csa::Rng rng(csa::derive_seed(point_seed, t));
    const csa::ConvolutionalResult res = csa::run_convolutional(cfg, rng);
    for (std::size_t i = 0; i < o.periods; ++i) {
      arr[i] += static_cast<double>(res.periods[i].arrivals);
      phy[i] += res.periods[i].physical_load;
      tp[i] += res.periods[i].throughput;
      plr[i] += res.periods[i].plr;
    }
    overall_tp += res.overall.throughput;
    overall_plr += res.overall.plr;
    overall_delay += res.overall.mean_delay;
  }
  const auto n = static_cast<double>(o.trials);
  std::ostringstream buf;
  buf << "period,mean_arrivals,mean_physical_load,mean_throughput,mean_plr\n";
  for (std::size_t i = 0; i < o.periods; ++i)
    buf << i << ',' << csa::format_number(arr[i] / n) << ',' << csa::format_number(phy[i] / n)
        << ',' << csa::format_number(tp[i] / n) << ',' << csa::format_number(plr[i] / n) << '\n';
  emit(buf.str(), o.run.out);
}

struct FsaUpgradeOpts {
  std::string mode = "a";
  std::uint32_t frame = 0;
  std::size_t frames = 1;
  std::size_t users = 0;
  std::uint32_t replicas = 1;
  std::size_t trials = 0;
  RunFlags run;
};

void run_fsa_upgrade_cmd(const FsaUpgradeOpts& o) {
  if (o.trials < 1) throw std::invalid_argument("fsa-upgrade: trials must be >= 1");
  csa::FsaUpgradeConfig cfg;
  if (o.mode == "a")
    cfg.mode = csa::FsaUpgradeMode::kLegacy;
  else if (o.mode == "b")
    cfg.mode = csa::FsaUpgradeMode::kCrossFrame;
  else if (o.mode == "c")
    cfg.mode = csa::FsaUpgradeMode::kReplicated;
  else
    throw std::invalid_argument("fsa-upgrade: mode must be a, b or c");
  cfg.slots_per_frame = o.frame;
  cfg.num_frames = o.frames;
  cfg.n_active = o.users;
  cfg.replicas_per_frame = o.replicas;

  double sum_tp = 0, sum_tp2 = 0, sum_plr = 0, sum_plr2 = 0, sum_delay = 0;
  std::vector<double> per_frame(o.frames, 0.0);
  const std::uint64_t point_seed = csa::derive_seed(o.run.seed, 0);
  for (std::size_t t = 0; t < o.trials; ++t) {
    csa::Rng rng(csa::derive_seed(point_seed, t));
    const csa::FsaUpgradeResult res = csa::run_fsa_upgrade(cfg, rng);
    sum_tp += res.metrics.throughput;
    sum_tp2 += res.metrics.throughput * res.metrics.throughput;
    sum_plr += res.metrics.plr;
    sum_plr2 += res.metrics.plr * res.metrics.plr;
    sum_delay += res.metrics.mean_delay;
    for (std::size_t f = 0; f < o.frames; ++f)
      per_frame[f] += static_cast<double>(res.per_frame_resolved[f]);
  }
  const auto n = static_cast<double>(o.trials);
  const double mean_tp = sum_tp / n;
  const double mean_plr = sum_plr / n;
  auto ci = [n](double sum2, double mean) {
    if (n < 2) return 0.0;
    const double var = (sum2 - n * mean * mean) / (n - 1.0);
    return 1.959964 * std::sqrt((var > 0 ? var : 0) / n);
  };
  std::ostringstream buf;
  buf << "mode,frames,frame_slots,users,replicas,trials,throughput,throughput_ci95,plr,plr_"
         "ci95,mean_delay,";
  for (std::size_t f = 0; f < o.frames; ++f) {
    buf << "frame" << f << "_resolved";
    buf << (f + 1 < o.frames ? ',' : '\n');
  }
  buf << o.mode << ',' << o.frames << ',' << o.frame << ',' << o.users << ',' << o.replicas
      << ',' << o.trials << ',' << csa::format_number(mean_tp) << ','
      << csa::format_number(ci(sum_tp2, mean_tp)) << ',' << csa::format_number(mean_plr) << ','
      << csa::format_number(ci(sum_plr2, mean_plr)) << ',' << csa::format_number(sum_delay / n)
      << ',';
  for (std::size_t f = 0; f < o.frames; ++f) {
    buf << csa::format_number(per_frame[f] / n);
    buf << (f + 1 < o.frames ? ',' : '\n');
  }
  emit(buf.str(), o.run.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded random access laboratory: peeling-decoder Monte Carlo and analysis"};
  app.require_subcommand(1);

  SimulateOpts sim;
  auto* c_sim = app.add_subcommand("simulate", "Framed scheme throughput/PLR sweep");
  c_sim->add_option("--dist", sim.dist, "Degree distribution, e.g. 2:0.5,3:0.5")->required();
  c_sim->add_option("--frame", sim.frame, "Slots per frame M")->required()->check(CLI::PositiveNumber);
  c_sim->add_option("--load", sim.load, "Load G or range G0:G1:step")->required();
  c_sim->add_option("--trials", sim.trials, "Trials per load point")->required()->check(CLI::PositiveNumber);
  c_sim->add_option("--population-factor", sim.population_factor,
                    "Population N = factor * G * M")->check(CLI::PositiveNumber);
  add_run_flags(c_sim, sim.run);
  c_sim->set_config("--config");
  c_sim->callback([&] { run_simulate(sim); });

  SimulateCodedOpts simc;
  auto* c_simc = app.add_subcommand("simulate-coded", "Generalized scheme sweep (segment slots)");
  c_simc->add_option("--ensemble", simc.ensemble, "Code ensemble file")->required();
  c_simc->add_option("--frame", simc.frame_segments,
                     "Contention period length in segment slots (multiple of k)")
      ->required()
      ->check(CLI::PositiveNumber);
  c_simc->add_option("--load", simc.load, "Load G or range G0:G1:step")->required();
  c_simc->add_option("--trials", simc.trials, "Trials per load point")->required()->check(CLI::PositiveNumber);
  c_simc->add_option("--population-factor", simc.population_factor,
                     "Population N = factor * G * M")->check(CLI::PositiveNumber);
  add_run_flags(c_simc, simc.run);
  c_simc->set_config("--config");
  c_simc->callback([&] { run_simulate_coded(simc); });

  ThresholdOpts thr;
  auto* c_thr = app.add_subcommand("threshold", "Decoding threshold of a distribution");
  c_thr->add_option("--dist", thr.dist, "Degree distribution")->required();
  c_thr->add_option("--tol", thr.tol, "Bisection tolerance")->check(CLI::PositiveNumber);
  c_thr->add_option("--out", thr.out, "Write CSV here instead of stdout");
  c_thr->set_config("--config");
  c_thr->callback([&] { run_threshold(thr); });

  BoundOpts bnd;
  auto* c_bnd = app.add_subcommand("bound", "Load ceiling for a scheme rate");
  c_bnd->add_option("--rate", bnd.rate, "Scheme rate in (0,1)")->required();
  c_bnd->add_option("--out", bnd.out, "Write CSV here instead of stdout");
  c_bnd->set_config("--config");
  c_bnd->callback([&] { run_bound(bnd); });

  OptimizeOpts opt;
  auto* c_opt = app.add_subcommand("optimize", "Search degree distributions for a rate");
  c_opt->add_option("--rate", opt.rate, "Target rate in (0, 1/2]")->required();
  c_opt->add_option("--max-degree", opt.max_degree, "Largest degree allowed")->required();
  c_opt->add_option("--gens", opt.generations, "Generations")->check(CLI::PositiveNumber);
  c_opt->add_option("--pop", opt.population, "Population size")->check(CLI::PositiveNumber);
  c_opt->add_option("--seed", opt.seed, "Search seed");
  c_opt->add_option("--out", opt.out, "Write CSV here instead of stdout");
  c_opt->set_config("--config");
  c_opt->callback([&] { run_optimize(opt); });

  FramelessOpts fl;
  auto* c_fl = app.add_subcommand("frameless", "Frameless operation with termination rules");
  c_fl->add_option("--users", fl.users, "Backlogged users")->required()->check(CLI::PositiveNumber);
  c_fl->add_option("--beta", fl.beta, "Target mean slot degree");
  c_fl->add_option("--term-fraction", fl.term_fraction, "Stop at this resolved fraction");
  c_fl->add_option("--term-throughput", fl.term_throughput,
                   "Also stop when instantaneous throughput reaches this (0 = off)");
  c_fl->add_option("--max-slots", fl.max_slots, "Period cap in slots (0 = 4*users)");
  c_fl->add_option("--trials", fl.trials, "Trials")->required()->check(CLI::PositiveNumber);
  c_fl->add_option("--curve-out", fl.curve_out, "Also write the mean per-slot curve here");
  add_run_flags(c_fl, fl.run);
  c_fl->set_config("--config");
  c_fl->callback([&] { run_frameless_cmd(fl); });

  ConvolutionalOpts cv;
  auto* c_cv = app.add_subcommand("convolutional", "Replicas spread over consecutive periods");
  c_cv->add_option("--d", cv.d, "Replicas, one per period")->required()->check(CLI::PositiveNumber);
  c_cv->add_option("--frame", cv.frame, "Slots per period M")->required()->check(CLI::PositiveNumber);
  c_cv->add_option("--load", cv.load, "Logical load G per period")->required();
  c_cv->add_option("--periods", cv.periods, "Arrival periods")->required()->check(CLI::PositiveNumber);
  c_cv->add_option("--trials", cv.trials, "Trials")->required()->check(CLI::PositiveNumber);
  c_cv->add_option("--population-factor", cv.population_factor,
                   "Arrival population factor")->check(CLI::PositiveNumber);
  add_run_flags(c_cv, cv.run);
  c_cv->set_config("--config");
  c_cv->callback([&] { run_convolutional_cmd(cv); });

  FsaUpgradeOpts fsa;
  auto* c_fsa = app.add_subcommand("fsa-upgrade", "Framed slotted upgrade path (modes a/b/c)");
  c_fsa->add_option("--mode", fsa.mode, "a = legacy, b = cross-frame SIC, c = replicas + SIC")
      ->required();
  c_fsa->add_option("--frame", fsa.frame, "Slots per frame")->required()->check(CLI::PositiveNumber);
  c_fsa->add_option("--frames", fsa.frames, "Frames")->required()->check(CLI::PositiveNumber);
  c_fsa->add_option("--users", fsa.users, "Active users")->required();
  c_fsa->add_option("--replicas", fsa.replicas, "Replicas per frame (mode c)");
  c_fsa->add_option("--trials", fsa.trials, "Trials")->required()->check(CLI::PositiveNumber);
  add_run_flags(c_fsa, fsa.run);
  c_fsa->set_config("--config");
  c_fsa->callback([&] { run_fsa_upgrade_cmd(fsa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "csa: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
