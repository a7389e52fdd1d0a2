#include "tlsel/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tlsel {

int Rng::uniform_int(int bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_int bound must be > 0");
  const std::uint64_t b = static_cast<std::uint64_t>(bound);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t r;
  do {
    r = gen_();
  } while (r >= limit);
  return static_cast<int>(r % b);
}

int Rng::poisson(double lambda) {
  if (!(lambda >= 0) || !std::isfinite(lambda))
    throw std::invalid_argument("poisson rate must be finite and >= 0");
  if (lambda == 0) return 0;
  if (lambda > 60) return poisson(lambda / 2) + poisson(lambda / 2);
  const double limit = std::exp(-lambda);
  int k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= uniform01();
  } while (p > limit);
  return k - 1;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + fnv1a64(tag);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace tlsel
