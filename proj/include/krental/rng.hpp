#ifndef KRENTAL_RNG_HPP
#define KRENTAL_RNG_HPP

#include <cstdint>
#include <random>

namespace krental {

// splitmix64 — used to derive independent per-trial seeds from (seed, index)
// so Monte Carlo results do not depend on how trials are partitioned across
// worker threads.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

// Uniform double in [0,1) with 53 random bits.  Avoids
// std::uniform_real_distribution, whose output is implementation-defined;
// byte-identical CSV output across platforms depends on this.
inline double canonical_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace krental

#endif
