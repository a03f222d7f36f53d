// Binary linear component codes for generalized contention schemes: a user
// splits its packet into k segments and transmits d encoded segments.
// Generators are stored as row bitmasks (bit j of a row = column j), which
// keeps every rank computation a handful of XORs.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "csa/rng.hpp"

namespace csa {

class ComponentCode {
 public:
  // Generator of a (length, dimension) code, one row per information
  // segment. Requires 1 <= dimension <= length <= 31 and full row rank;
  // throws std::invalid_argument otherwise.
  ComponentCode(std::size_t dimension, std::size_t length,
                std::vector<std::uint32_t> generator_rows);

  static ComponentCode repetition(std::size_t length);          // k=1, all-ones row
  static ComponentCode single_parity_check(std::size_t dimension);  // d = k+1

  // Text form "101;011": rows separated by ';', leftmost character is
  // column 0.
  static ComponentCode parse(std::string_view text);
  std::string to_string() const;

  std::size_t dimension() const { return k_; }
  std::size_t length() const { return d_; }
  const std::vector<std::uint32_t>& generator_rows() const { return rows_; }

  // True when the columns selected by known_mask span the information
  // space, i.e. maximum-a-posteriori erasure decoding recovers the packet.
  bool info_determined(std::uint32_t known_mask) const;

  bool operator==(const ComponentCode& other) const {
    return k_ == other.k_ && d_ == other.d_ && rows_ == other.rows_;
  }

 private:
  std::size_t k_;
  std::size_t d_;
  std::vector<std::uint32_t> rows_;
};

// Rank of a set of GF(2) row vectors.
std::size_t gf2_rank(const std::vector<std::uint32_t>& rows);

struct ErasureDecision {
  bool packet_recovered = false;  // all k segments known
};

// MAP erasure decoding given the set of known code positions. All-or-
// nothing: either the known columns have rank k or nothing is recovered.
ErasureDecision erasure_decode(const ComponentCode& code, std::uint32_t known_mask);

// Mixture of component codes of a common dimension.
class CodeEnsemble {
 public:
  CodeEnsemble(std::vector<ComponentCode> codes, std::vector<double> probabilities);

  // Lines of "<probability> <generator-text>"; '#' comments and blank lines
  // are skipped.
  static CodeEnsemble parse(std::string_view text);
  static CodeEnsemble load_file(const std::string& path);

  std::size_t size() const { return codes_.size(); }
  const ComponentCode& code(std::size_t i) const { return codes_[i]; }
  double probability(std::size_t i) const { return probs_[i]; }
  std::size_t dimension() const { return codes_.front().dimension(); }

  double mean_length() const { return mean_length_; }
  // Scheme rate k / mean length.
  double rate() const { return static_cast<double>(dimension()) / mean_length_; }

  std::size_t sample_index(Rng& rng) const;
  const ComponentCode& sample(Rng& rng) const { return codes_[sample_index(rng)]; }

 private:
  std::vector<ComponentCode> codes_;
  std::vector<double> probs_;
  double mean_length_ = 0.0;
};

}  // namespace csa
