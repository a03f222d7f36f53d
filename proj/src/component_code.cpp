#include "csa/component_code.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace csa {

std::size_t gf2_rank(const std::vector<std::uint32_t>& rows) {
  std::uint32_t pivot[32] = {0};
  std::size_t rank = 0;
  for (std::uint32_t r : rows) {
    while (r) {
      const int hb = 31 - std::countl_zero(r);
      if (!pivot[hb]) {
        pivot[hb] = r;
        ++rank;
        break;
      }
      r ^= pivot[hb];
    }
  }
  return rank;
}

ComponentCode::ComponentCode(std::size_t dimension, std::size_t length,
                             std::vector<std::uint32_t> generator_rows)
    : k_(dimension), d_(length), rows_(std::move(generator_rows)) {
  if (k_ < 1) throw std::invalid_argument("component code: dimension must be >= 1");
  if (d_ < k_) throw std::invalid_argument("component code: length must be >= dimension");
  if (d_ > 31) throw std::invalid_argument("component code: length must be <= 31");
  if (rows_.size() != k_)
    throw std::invalid_argument("component code: generator must have one row per segment");
  const std::uint32_t col_mask = (1u << d_) - 1;
  for (std::uint32_t r : rows_)
    if (r & ~col_mask)
      throw std::invalid_argument("component code: generator row wider than code length");
  if (gf2_rank(rows_) != k_)
    throw std::invalid_argument("component code: generator rows must be linearly independent");
}

ComponentCode ComponentCode::repetition(std::size_t length) {
  if (length < 1 || length > 31)
    throw std::invalid_argument("component code: repetition length must be in [1,31]");
  return ComponentCode(1, length, {static_cast<std::uint32_t>((1u << length) - 1)});
}

ComponentCode ComponentCode::single_parity_check(std::size_t dimension) {
  if (dimension < 1 || dimension > 30)
    throw std::invalid_argument("component code: parity-check dimension must be in [1,30]");
  std::vector<std::uint32_t> rows(dimension);
  const auto parity_col = static_cast<std::uint32_t>(1u << dimension);
  for (std::size_t i = 0; i < dimension; ++i) rows[i] = (1u << i) | parity_col;
  return ComponentCode(dimension, dimension + 1, std::move(rows));
}

ComponentCode ComponentCode::parse(std::string_view text) {
  std::vector<std::uint32_t> rows;
  std::size_t length = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
    if (tok.empty())
      throw std::invalid_argument("component code: empty generator row in \"" +
                                  std::string(text) + "\"");
    if (rows.empty())
      length = tok.size();
    else if (tok.size() != length)
      throw std::invalid_argument("component code: generator rows differ in length");
    std::uint32_t row = 0;
    for (std::size_t j = 0; j < tok.size(); ++j) {
      if (tok[j] == '1')
        row |= 1u << j;
      else if (tok[j] != '0')
        throw std::invalid_argument("component code: generator rows must be binary");
    }
    rows.push_back(row);
    if (end == text.size()) break;
    pos = end + 1;
  }
  const std::size_t dimension = rows.size();
  return ComponentCode(dimension, length, std::move(rows));
}

std::string ComponentCode::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < k_; ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < d_; ++j) out += (rows_[i] >> j) & 1u ? '1' : '0';
  }
  return out;
}

bool ComponentCode::info_determined(std::uint32_t known_mask) const {
  std::vector<std::uint32_t> masked(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) masked[i] = rows_[i] & known_mask;
  return gf2_rank(masked) == k_;
}

ErasureDecision erasure_decode(const ComponentCode& code, std::uint32_t known_mask) {
  return {code.info_determined(known_mask)};
}

CodeEnsemble::CodeEnsemble(std::vector<ComponentCode> codes, std::vector<double> probabilities)
    : codes_(std::move(codes)), probs_(std::move(probabilities)) {
  if (codes_.empty()) throw std::invalid_argument("code ensemble: no codes");
  if (probs_.size() != codes_.size())
    throw std::invalid_argument("code ensemble: one probability per code required");
  const std::size_t k = codes_.front().dimension();
  double sum = 0.0;
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (codes_[i].dimension() != k)
      throw std::invalid_argument("code ensemble: codes must share one dimension");
    if (!(probs_[i] >= 0.0) || probs_[i] > 1.0)
      throw std::invalid_argument("code ensemble: probability must be in [0,1]");
    sum += probs_[i];
    mean_length_ += probs_[i] * static_cast<double>(codes_[i].length());
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("code ensemble: probabilities must sum to 1");
}

CodeEnsemble CodeEnsemble::parse(std::string_view text) {
  std::vector<ComponentCode> codes;
  std::vector<double> probs;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double p;
    std::string gen;
    if (!(ls >> p)) continue;  // blank or comment-only line
    if (!(ls >> gen))
      throw std::invalid_argument("code ensemble: line " + std::to_string(line_no) +
                                  ": expected \"<probability> <generator>\"");
    probs.push_back(p);
    codes.push_back(ComponentCode::parse(gen));
  }
  return CodeEnsemble(std::move(codes), std::move(probs));
}

CodeEnsemble CodeEnsemble::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("code ensemble: cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse(buf.str());
}

std::size_t CodeEnsemble::sample_index(Rng& rng) const {
  const double u = rng.next_double();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    acc += probs_[i];
    if (u < acc) return i;
  }
  return probs_.size() - 1;
}

}  // namespace csa
