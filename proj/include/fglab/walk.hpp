#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fglab/boundary.hpp"
#include "fglab/rng.hpp"
#include "fglab/words.hpp"

namespace fgl {

// One sampled trajectory w_0 = e, w_{k+1} = w_k * g_{k+1} (right
// increments, so prefixes stabilize as the walk escapes to the boundary).
// Positions are stored implicitly: steps plus per-step word length, with
// position(k) recovered by replay.
class WalkPath {
 public:
  WalkPath(std::uint64_t seed, std::vector<Letter> steps,
           std::vector<std::uint32_t> lengths, ReducedWord final_word)
      : seed_(seed),
        steps_(std::move(steps)),
        lengths_(std::move(lengths)),
        final_word_(std::move(final_word)) {}

  std::uint64_t seed() const { return seed_; }
  std::size_t step_count() const { return steps_.size(); }
  const std::vector<Letter>& steps() const { return steps_; }
  // |position(k)| in O(1).
  std::uint32_t length_at(std::size_t k) const { return lengths_[k]; }
  const ReducedWord& final_word() const { return final_word_; }

  // Replays the walk to recover position k (O(k)).
  ReducedWord position(std::size_t k) const;

 private:
  std::uint64_t seed_;
  std::vector<Letter> steps_;
  std::vector<std::uint32_t> lengths_;
  ReducedWord final_word_;
};

// Draws a letter with law m, exactly (rational weights; rejection sampling).
Letter sample_letter(SplitMix64& rng, const StepDistribution& m);

WalkPath sample_walk(std::uint64_t seed, std::size_t n,
                     const StepDistribution& m = StepDistribution::uniform());

struct PrefixStabilization {
  int depth = 0;
  std::size_t stable_from = 0;
  ReducedWord prefix;
};

// Depth-long prefix shared by every position in the final stability_window
// steps (all of which must have length >= depth). stable_from is the
// earliest index from which the prefix persists to the horizon. Returns
// nullopt when the horizon was too short.
std::optional<PrefixStabilization> boundary_limit_prefix(
    const WalkPath& path, int depth, std::size_t stability_window);

// |w_n| / n for the seeded walk.
double drift_estimate(std::uint64_t seed, std::size_t n,
                      const StepDistribution& m = StepDistribution::uniform());

// Empirical distribution of stabilized depth-prefixes over an ensemble of
// walks; counts are indexed by reduced_word_index.
struct CylinderCensus {
  int depth = 0;
  std::size_t total_runs = 0;
  std::size_t stabilized_runs = 0;
  std::vector<std::int64_t> counts;

  double frequency(std::uint64_t index) const {
    return stabilized_runs == 0
               ? 0.0
               : static_cast<double>(counts[index]) / stabilized_runs;
  }
};

// Runs `seeds` walks (substreams of base_seed), horizon n each, window =
// max(1, n/10). OpenMP-parallel across walks; merge is a commutative count
// sum, so the result is independent of scheduling and identical to the
// serial reference.
CylinderCensus empirical_cylinder_freq(std::uint64_t base_seed,
                                       std::size_t seeds, std::size_t n,
                                       int depth,
                                       const StepDistribution& m =
                                           StepDistribution::uniform());
CylinderCensus empirical_cylinder_freq_serial(
    std::uint64_t base_seed, std::size_t seeds, std::size_t n, int depth,
    const StepDistribution& m = StepDistribution::uniform());

struct McEstimate {
  double mean = 0;
  double std_error = 0;
  std::size_t samples = 0;
};

// Monte Carlo boundary entropy: per sample, draw g ~ m and a boundary
// prefix xi via a stabilized walk, and average -k(g, xi) * log 3. Samples
// whose walk fails to stabilize are redrawn with a fresh substream.
McEstimate entropy_boundary_mc(std::uint64_t seed, std::size_t samples,
                               std::size_t horizon,
                               const StepDistribution& m =
                                   StepDistribution::uniform());
McEstimate entropy_boundary_mc_serial(std::uint64_t seed, std::size_t samples,
                                      std::size_t horizon,
                                      const StepDistribution& m =
                                          StepDistribution::uniform());

}  // namespace fgl
