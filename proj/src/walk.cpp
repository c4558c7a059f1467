#include "fglab/walk.hpp"

#include <cmath>
#include <stdexcept>

#include "fglab/sampling.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fgl {
namespace {

struct LetterSampler {
  WeightSampler4 weights;

  explicit LetterSampler(const StepDistribution& m) : weights(m.weights) {}

  Letter draw(SplitMix64& rng) const { return kLetters[weights.draw(rng)]; }
};

std::uint64_t walk_seed(std::uint64_t base_seed, std::uint64_t index) {
  return substream(base_seed, index).next();
}

}  // namespace

Letter sample_letter(SplitMix64& rng, const StepDistribution& m) {
  return LetterSampler(m).draw(rng);
}

ReducedWord WalkPath::position(std::size_t k) const {
  ReducedWord w;
  for (std::size_t i = 0; i < k; ++i) w.push_right(steps_[i]);
  return w;
}

WalkPath sample_walk(std::uint64_t seed, std::size_t n,
                     const StepDistribution& m) {
  const LetterSampler sampler(m);
  SplitMix64 rng{mix64(seed)};
  std::vector<Letter> steps;
  std::vector<std::uint32_t> lengths;
  steps.reserve(n);
  lengths.reserve(n + 1);
  lengths.push_back(0);
  ReducedWord w;
  for (std::size_t i = 0; i < n; ++i) {
    const Letter g = sampler.draw(rng);
    steps.push_back(g);
    w.push_right(g);
    lengths.push_back(static_cast<std::uint32_t>(w.size()));
  }
  return WalkPath(seed, std::move(steps), std::move(lengths), std::move(w));
}

std::optional<PrefixStabilization> boundary_limit_prefix(
    const WalkPath& path, int depth, std::size_t stability_window) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  const std::size_t n = path.step_count();
  const std::size_t window_start = stability_window > n ? 0 : n - stability_window;

  if (path.length_at(window_start) < static_cast<std::uint32_t>(depth))
    return std::nullopt;
  const ReducedWord candidate =
      path.position(window_start).prefix(static_cast<std::size_t>(depth));

  // Replay once, tracking the last index whose position fails to carry the
  // candidate prefix.
  ReducedWord w;
  std::size_t last_violation = 0;
  bool any_violation = w.size() >= static_cast<std::size_t>(depth)
                           ? !w.starts_with(candidate)
                           : true;  // position 0 is e, violating depth >= 1
  for (std::size_t k = 1; k <= n; ++k) {
    w.push_right(path.steps()[k - 1]);
    const bool ok = w.size() >= static_cast<std::size_t>(depth) &&
                    w.starts_with(candidate);
    if (!ok) {
      last_violation = k;
      any_violation = true;
    }
  }
  if (any_violation && last_violation >= window_start) return std::nullopt;
  const std::size_t stable_from = any_violation ? last_violation + 1 : 0;
  return PrefixStabilization{depth, stable_from, candidate};
}

double drift_estimate(std::uint64_t seed, std::size_t n,
                      const StepDistribution& m) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const WalkPath path = sample_walk(seed, n, m);
  return static_cast<double>(path.length_at(n)) / static_cast<double>(n);
}

namespace {

CylinderCensus census_impl(std::uint64_t base_seed, std::size_t seeds,
                           std::size_t n, int depth, const StepDistribution& m,
                           bool parallel) {
  CylinderCensus census;
  census.depth = depth;
  census.total_runs = seeds;
  census.counts.assign(reduced_word_count(depth), 0);
  const std::size_t window = std::max<std::size_t>(1, n / 10);

  const std::int64_t count = static_cast<std::int64_t>(seeds);
#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
  {
    std::vector<std::int64_t> local(census.counts.size(), 0);
    std::int64_t local_stab = 0;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t i = 0; i < count; ++i) {
      const WalkPath path =
          sample_walk(walk_seed(base_seed, static_cast<std::uint64_t>(i)), n, m);
      if (auto stab = boundary_limit_prefix(path, depth, window)) {
        ++local[reduced_word_index(stab->prefix)];
        ++local_stab;
      }
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    {
      for (std::size_t j = 0; j < local.size(); ++j)
        census.counts[j] += local[j];
      census.stabilized_runs += static_cast<std::size_t>(local_stab);
    }
  }
  return census;
}

McEstimate combine_chunks(const std::vector<double>& sums,
                          const std::vector<double>& sumsqs,
                          std::size_t samples) {
  double sum = 0, sumsq = 0;
  for (std::size_t j = 0; j < sums.size(); ++j) {
    sum += sums[j];
    sumsq += sumsqs[j];
  }
  McEstimate est;
  est.samples = samples;
  est.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    const double var =
        (sumsq - static_cast<double>(samples) * est.mean * est.mean) /
        static_cast<double>(samples - 1);
    est.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
  }
  return est;
}

constexpr std::size_t kChunk = 1024;

McEstimate boundary_mc_impl(std::uint64_t seed, std::size_t samples,
                            std::size_t horizon, const StepDistribution& m,
                            bool parallel) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const LetterSampler sampler(m);
  const std::size_t nchunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> sums(nchunks, 0.0), sumsqs(nchunks, 0.0);
  const double log3 = std::log(3.0);
  const std::size_t window = std::max<std::size_t>(1, horizon / 10);

  const std::int64_t chunks = static_cast<std::int64_t>(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    double s = 0, s2 = 0;
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(samples, begin + kChunk);
    for (std::size_t i = begin; i < end; ++i) {
      SplitMix64 rng = substream(seed, i);
      const Letter g = sampler.draw(rng);
      ReducedWord xi;
      for (;;) {
        const WalkPath path = sample_walk(rng.next(), horizon, m);
        if (auto stab = boundary_limit_prefix(path, 1, window)) {
          xi = stab->prefix;
          break;
        }
      }
      const double v = -log3 * rn_exponent(ReducedWord(g), xi).k;
      s += v;
      s2 += v * v;
    }
    sums[static_cast<std::size_t>(c)] = s;
    sumsqs[static_cast<std::size_t>(c)] = s2;
  }
  return combine_chunks(sums, sumsqs, samples);
}

}  // namespace

CylinderCensus empirical_cylinder_freq(std::uint64_t base_seed,
                                       std::size_t seeds, std::size_t n,
                                       int depth, const StepDistribution& m) {
  return census_impl(base_seed, seeds, n, depth, m, true);
}

CylinderCensus empirical_cylinder_freq_serial(std::uint64_t base_seed,
                                              std::size_t seeds, std::size_t n,
                                              int depth,
                                              const StepDistribution& m) {
  return census_impl(base_seed, seeds, n, depth, m, false);
}

McEstimate entropy_boundary_mc(std::uint64_t seed, std::size_t samples,
                               std::size_t horizon, const StepDistribution& m) {
  return boundary_mc_impl(seed, samples, horizon, m, true);
}

McEstimate entropy_boundary_mc_serial(std::uint64_t seed, std::size_t samples,
                                      std::size_t horizon,
                                      const StepDistribution& m) {
  return boundary_mc_impl(seed, samples, horizon, m, false);
}

}  // namespace fgl
