// Repetition-degree distribution of a contention scheme: Lambda_d is the
// probability that a user sends d replicas of its packet.
#pragma once

#include <map>
#include <string>
#include <string_view>

#include "csa/rng.hpp"

namespace csa {

class DegreeDistribution {
 public:
  // Entries with probability 0 are dropped. Requires every degree >= 1,
  // every probability in [0,1], and the probabilities to sum to 1 within
  // 1e-12; throws std::invalid_argument otherwise.
  explicit DegreeDistribution(std::map<int, double> entries);

  // Text form "2:0.5,3:0.28,8:0.22". Whitespace around tokens is accepted.
  static DegreeDistribution parse(std::string_view text);
  std::string to_string() const;

  const std::map<int, double>& entries() const { return entries_; }
  int min_degree() const { return entries_.begin()->first; }
  int max_degree() const { return entries_.rbegin()->first; }

  double mean_degree() const { return mean_degree_; }
  // Code rate of the repetition scheme, 1 / mean_degree.
  double rate() const { return 1.0 / mean_degree_; }

  // Edge-perspective coefficients lambda_d = d * Lambda_d / mean_degree.
  std::map<int, double> edge_perspective() const;

  // Inverse-CDF draw of one degree.
  int sample(Rng& rng) const;

 private:
  std::map<int, double> entries_;
  double mean_degree_ = 0.0;
};

}  // namespace csa
