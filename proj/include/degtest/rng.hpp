#pragma once

#include <cstdint>
#include <limits>

namespace degtest {

/**
 * SplitMix64 generator. Cheap to seed, so every Monte-Carlo trial gets its own
 * stream derived from (master seed, trial index); results are then independent
 * of how trials are split across workers.
 */
struct SplitMix64 {
  using result_type = uint64_t;
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return std::numeric_limits<uint64_t>::max(); }

  uint64_t operator()() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

/** Initial state for the sub-stream of trial `index` under `seed`. */
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return g();
}

/** Uniform n-bit point (low n bits of one draw). */
template <typename Rng>
inline uint32_t random_point_bits(Rng& rng, int n) {
  return static_cast<uint32_t>(rng() & ((n >= 32) ? ~0ULL : ((1ULL << n) - 1)));
}

}  // namespace degtest
