#include "csa/degree_distribution.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace csa {

DegreeDistribution::DegreeDistribution(std::map<int, double> entries) {
  double sum = 0.0;
  for (const auto& [d, p] : entries) {
    if (d < 1) throw std::invalid_argument("degree distribution: degree must be >= 1");
    if (!(p >= 0.0) || p > 1.0)
      throw std::invalid_argument("degree distribution: probability must be in [0,1]");
    if (p == 0.0) continue;
    entries_[d] = p;
    sum += p;
    mean_degree_ += d * p;
  }
  if (entries_.empty()) throw std::invalid_argument("degree distribution: no positive mass");
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("degree distribution: probabilities must sum to 1");
}

DegreeDistribution DegreeDistribution::parse(std::string_view text) {
  std::map<int, double> entries;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
    if (tok.empty())
      throw std::invalid_argument("degree distribution: empty entry in \"" + std::string(text) + "\"");
    const std::size_t colon = tok.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("degree distribution: expected d:p, got \"" + std::string(tok) + "\"");
    int d = 0;
    auto rc = std::from_chars(tok.data(), tok.data() + colon, d);
    if (rc.ec != std::errc{} || rc.ptr != tok.data() + colon)
      throw std::invalid_argument("degree distribution: bad degree in \"" + std::string(tok) + "\"");
    double p = 0.0;
    auto rp = std::from_chars(tok.data() + colon + 1, tok.data() + tok.size(), p);
    if (rp.ec != std::errc{} || rp.ptr != tok.data() + tok.size())
      throw std::invalid_argument("degree distribution: bad probability in \"" + std::string(tok) + "\"");
    if (entries.count(d))
      throw std::invalid_argument("degree distribution: duplicate degree in \"" + std::string(text) + "\"");
    entries[d] = p;
    if (end == text.size()) break;
    pos = end + 1;
  }
  return DegreeDistribution(std::move(entries));
}

std::string DegreeDistribution::to_string() const {
  std::string out;
  char buf[32];
  for (const auto& [d, p] : entries_) {
    if (!out.empty()) out += ',';
    out += std::to_string(d);
    out += ':';
    auto r = std::to_chars(buf, buf + sizeof buf, p);  // shortest round-trip form
    out.append(buf, r.ptr);
  }
  return out;
}

std::map<int, double> DegreeDistribution::edge_perspective() const {
  std::map<int, double> lambda;
  for (const auto& [d, p] : entries_) lambda[d] = d * p / mean_degree_;
  return lambda;
}

int DegreeDistribution::sample(Rng& rng) const {
  const double u = rng.next_double();
  double acc = 0.0;
  for (const auto& [d, p] : entries_) {
    acc += p;
    if (u < acc) return d;
  }
  return entries_.rbegin()->first;  // guards against rounding in the partial sums
}

}  // namespace csa
