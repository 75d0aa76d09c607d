// Seeded random number generation with a fixed cross-platform mapping from
// generator output to doubles. Every stochastic code path in the library
// draws through this class so that a (seed, stream) pair pins down results
// exactly; std::uniform_real_distribution and friends are avoided because
// their output sequences are implementation-defined.
#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace albatch {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1), 53 bits of entropy.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  // Standard normal via Box-Muller; the sine mate is cached.
  double normal();

  // Draws an index proportionally to the non-negative weights. `total`
  // must equal the sum of the weights.
  std::size_t categorical(std::span<const double> weights, double total);

  // Derives an independent stream seed (splitmix64 finalizer).
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace albatch
