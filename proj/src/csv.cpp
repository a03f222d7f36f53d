#include "csa/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace csa {

std::string format_number(double v) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, r.ptr);
}

void write_csv(const SweepReport& report, std::ostream& out) {
  out << kSweepCsvHeader << '\n';
  for (const auto& p : report.points) {
    out << format_number(p.load) << ',' << p.trials << ',' << format_number(p.throughput)
        << ',' << format_number(p.throughput_ci95) << ',' << format_number(p.plr) << ','
        << format_number(p.plr_ci95) << ',' << format_number(p.mean_iterations) << ','
        << format_number(p.mean_delay) << '\n';
  }
}

void write_csv(const SweepReport& report, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  write_csv(report, f);
  f.flush();
  if (!f) throw std::runtime_error("failed writing output file " + path);
}

}  // namespace csa
