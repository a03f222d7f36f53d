// CSV emission. Numbers are printed with std::to_chars at 6 significant
// digits: locale-independent, so a file is byte-identical across machines.
#pragma once

#include <ostream>
#include <string>

#include "csa/sweep.hpp"

namespace csa {

std::string format_number(double v);

inline constexpr const char* kSweepCsvHeader =
    "G,trials,throughput,throughput_ci95,plr,plr_ci95,mean_iters,mean_delay";

void write_csv(const SweepReport& report, std::ostream& out);
// Throws std::runtime_error naming the path when the file cannot be written.
void write_csv(const SweepReport& report, const std::string& path);

}  // namespace csa
