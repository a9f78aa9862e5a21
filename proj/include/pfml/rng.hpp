#ifndef PFML_RNG_HPP_
#define PFML_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace pfml {

// mt19937_64 with hand-rolled draw functions. std::*_distribution output is
// implementation-defined, which would break run reproducibility across
// toolchains; these produce the same stream everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n), rejection on a power-of-two mask.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      const uint64_t v = gen_() & mask;
      if (v < n) return v;
    }
  }

  // Box-Muller, cosine branch. Two uniforms per draw.
  double gaussian(double mean = 0.0, double stddev = 1.0) {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    return mean + stddev * z;
  }

 private:
  std::mt19937_64 gen_;
};

// Derives an independent seed for substream `index` (splitmix64 mix).
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace pfml

#endif
