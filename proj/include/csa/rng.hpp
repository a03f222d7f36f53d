// Deterministic random number generation. Every draw is a pure integer
// transform of the seed, so a given seed produces the same sequence on any
// platform and at any thread count.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace csa {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer. Bijective on 64-bit values; used for seed derivation
// and for counter-mode hashing of slot positions.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Child seed for stream `index` of a master seed. Distinct indices give
// decorrelated streams; used to give every trial of every sweep point its
// own generator.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + kGoldenGamma * (index + 1));
}

// xoshiro256** with SplitMix64 state expansion.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    // The four state words are the first outputs of a SplitMix64 stream.
    // mix64 is bijective, so at most one word can be zero and the all-zero
    // state is unreachable.
    for (int i = 0; i < 4; ++i) state_[i] = derive_seed(seed, i);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53 random bits.
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [0,bound) without modulo bias: values below 2^64 mod bound
  // are rejected.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::next_below: bound must be positive");
    const std::uint64_t reject = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= reject) return x % bound;
    }
  }

  // One draw compared against the integer threshold p * 2^64. Exact up to
  // the 2^-64 quantisation of p; avoids any float comparison in hot loops.
  bool next_bernoulli(double p) {
    const std::uint64_t x = next_u64();
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return x < static_cast<std::uint64_t>(p * 0x1.0p64);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> state_;
};

}  // namespace csa
