#pragma once

#include <cstdint>

namespace fgl {

// SplitMix64 (Steele, Lea, Vigna). Fixed algorithm, byte-identical on every
// platform; every randomized routine in this project derives its stream from
// it so results depend only on the (seed, stream) pair, never on scheduling.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

inline std::uint64_t mix64(std::uint64_t x) {
  SplitMix64 g{x};
  return g.next();
}

// Substream `stream` of a master seed: decorrelates parallel workers while
// staying reproducible for any worker count.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64{mix64(seed) ^ mix64(stream * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull)};
}

// Unbiased uniform draw from [0, n) by rejection.
inline std::uint64_t bounded(SplitMix64& g, std::uint64_t n) {
  const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
  for (;;) {
    std::uint64_t u = g.next();
    if (u < limit) return u % n;
  }
}

// Exact Bernoulli(num/den) draw.
inline bool bernoulli(SplitMix64& g, std::uint64_t num, std::uint64_t den) {
  if (num == 0) return false;
  if (num >= den) return true;
  return bounded(g, den) < num;
}

}  // namespace fgl
