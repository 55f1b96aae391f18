#ifndef THETA2_RNG_HPP
#define THETA2_RNG_HPP

#include <cstdint>
#include <random>

namespace theta2 {

// Seeded random source for the randomized test suites.  std::mt19937_64 output
// is pinned by the standard; the floating-point helpers below avoid
// std::uniform_real_distribution, whose draw sequence is implementation
// defined, so that reports are byte-identical across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : eng_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n).  Modulo bias is irrelevant at the n used here.
  std::int64_t below(std::int64_t n) {
    return static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(n));
  }

private:
  std::mt19937_64 eng_;
};

} // namespace theta2

#endif
