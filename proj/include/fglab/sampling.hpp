#pragma once

#include <array>
#include <limits>
#include <stdexcept>

#include "fglab/rational.hpp"
#include "fglab/rng.hpp"

namespace fgl {

// Exact sampler for four rational weights summing to 1: a single unbiased
// draw from [0, common denominator) against cumulative numerators.
class WeightSampler4 {
 public:
  explicit WeightSampler4(const std::array<Rat, 4>& weights) {
    Int lcm = 1;
    for (const Rat& w : weights) {
      if (w < 0) throw std::invalid_argument("weights must be nonnegative");
      const Int d = denominator(w);
      lcm = lcm / gcd(lcm, d) * d;
    }
    if (lcm > std::numeric_limits<std::uint64_t>::max()) {
      throw std::invalid_argument("weight denominator too large");
    }
    den_ = lcm.convert_to<std::uint64_t>();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      const Int scaled = numerator(weights[i]) * (lcm / denominator(weights[i]));
      acc += scaled.convert_to<std::uint64_t>();
      cum_[i] = acc;
    }
    if (acc != den_) throw std::invalid_argument("weights must sum to 1");
  }

  std::size_t draw(SplitMix64& rng) const {
    const std::uint64_t u = bounded(rng, den_);
    for (std::size_t i = 0; i < 3; ++i)
      if (u < cum_[i]) return i;
    return 3;
  }

 private:
  std::uint64_t den_ = 1;
  std::array<std::uint64_t, 4> cum_{};
};

}  // namespace fgl
