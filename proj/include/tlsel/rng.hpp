#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tlsel {

// Deterministic cross-platform randomness: mt19937_64 plus our own draw
// helpers, since the std distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // 53-bit uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform in [0, bound) by rejection.
  int uniform_int(int bound);

  // Knuth's product method; large rates split via Poisson additivity.
  int poisson(double lambda);

 private:
  std::mt19937_64 gen_;
};

std::uint64_t fnv1a64(std::string_view s);

// Stable per-entity seed derivation (seed x user id, seed x purpose tag).
std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag);

}  // namespace tlsel
