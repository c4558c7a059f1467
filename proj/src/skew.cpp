#include "fglab/skew.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fgl {

BernoulliParam::BernoulliParam(Rat t) : t_(std::move(t)) {
  if (t_ < 0 || t_ > 1) throw OutOfRangeError("t must lie in [0, 1]");
  const Int n = numerator(t_), d = denominator(t_);
  if (d > std::numeric_limits<std::uint64_t>::max()) {
    throw OutOfRangeError("t denominator too large for sampling");
  }
  num_ = n.convert_to<std::uint64_t>();
  den_ = d.convert_to<std::uint64_t>();
}

std::uint8_t BinaryWindow::bit(std::int64_t i) {
  const std::int64_t slot = origin_ + i;
  auto it = bits_.find(slot);
  if (it == bits_.end()) {
    SplitMix64 rng = substream(seed_, static_cast<std::uint64_t>(slot));
    const std::uint8_t v = bernoulli(rng, num_, den_) ? 1 : 0;
    it = bits_.emplace(slot, v).first;
  }
  return it->second;
}

void BinaryWindow::force_bit(std::int64_t i, std::uint8_t value) {
  bits_[origin_ + i] = value ? 1 : 0;
}

bool BinaryWindow::covers(std::int64_t i) const {
  return bits_.count(origin_ + i) > 0;
}

void SkewPoint::ensure_z_depth(std::size_t depth) {
  if (z.size() >= depth) return;
  if (!z_tail) {
    throw InsufficientDepthError("boundary prefix exhausted and no tail sampler");
  }
  if (!z.empty()) z_tail->last_drawn = z.back();
  while (z.size() < depth) {
    SplitMix64 rng = substream(z_tail->seed, z_tail->drawn);
    Letter next;
    if (!z_tail->last_drawn) {
      next = kLetters[bounded(rng, 4)];
    } else {
      const Letter forbidden = inverse(*z_tail->last_drawn);
      std::uint64_t rank = bounded(rng, 3);
      next = Letter::a;
      for (Letter x : kLetters) {
        if (x == forbidden) continue;
        if (rank == 0) {
          next = x;
          break;
        }
        --rank;
      }
    }
    ++z_tail->drawn;
    z_tail->last_drawn = next;
    z.push_right(next);  // never cancels: next != inverse(z.back())
  }
}

SkewPoint sample_skew_point(std::uint64_t seed, const BernoulliParam& t) {
  SplitMix64 rng = substream(seed, 0x5345454eull);
  const std::uint64_t omega_seed = rng.next();
  const std::uint64_t z_seed = rng.next();
  return SkewPoint{BinaryWindow(omega_seed, t), ReducedWord{},
                   ZTail{z_seed, 0, std::nullopt}};
}

SkewPoint act_skew(Letter g, SkewPoint p) {
  const bool forward = (g == Letter::a || g == Letter::b);
  const std::int64_t drive = forward ? 0 : -1;
  const std::uint8_t bit = p.omega.bit(drive);
  if (bit == 1) {
    p.ensure_z_depth(1);  // cancellation below must see the first letter
    p.z.push_left(g);
  }
  if (forward) {
    p.omega.shift_fwd();
  } else {
    p.omega.shift_back();
  }
  return p;
}

RNExponent rn_exponent_skew(Letter g, SkewPoint& p) {
  const std::uint8_t bit = p.omega.bit(rn_bit_coordinate(g));
  if (bit == 0) return RNExponent{0};
  p.ensure_z_depth(1);
  return RNExponent{p.z[0] == g ? 1 : -1};
}

Rat nu_measure(const ProductCylinder& pc, const BernoulliParam& t) {
  Rat m = eta(pc.z_cyl);
  for (const auto& [coord, bit] : pc.omega_constraints) {
    m *= bit ? t.t() : (1 - t.t());
  }
  return m;
}

std::vector<ProductCylinder> preimage_product_cylinder(
    Letter g, const ProductCylinder& pc) {
  const bool forward = (g == Letter::a || g == Letter::b);
  // Constraints on the shifted omega pull back to coord +/- 1; the branch
  // bit sits at the driving coordinate of g.
  const std::int64_t delta = forward ? 1 : -1;
  const std::int64_t drive = forward ? 0 : -1;

  std::map<std::int64_t, std::uint8_t> shifted;
  for (const auto& [coord, bit] : pc.omega_constraints)
    shifted.emplace(coord + delta, bit);

  std::vector<ProductCylinder> out;
  for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
    auto it = shifted.find(drive);
    if (it != shifted.end() && it->second != bit) continue;  // contradiction
    std::map<std::int64_t, std::uint8_t> constraints = shifted;
    constraints[drive] = bit;
    if (bit == 0) {
      out.push_back(ProductCylinder{std::move(constraints), pc.z_cyl});
    } else {
      for (const Cylinder& zc : preimage_cylinder(ReducedWord(g), pc.z_cyl))
        out.push_back(ProductCylinder{constraints, zc});
    }
  }
  return out;
}

namespace {

// Flat enumeration of the cylinders checked by the stationarity sweep:
// omega patterns are base-3 words over coordinates {-depth..depth}
// (digit 0 = unconstrained, 1/2 = bit 0/1); z cylinders run over all
// depths 0..depth in index order.
struct SweepDomain {
  int depth;
  std::vector<ReducedWord> z_words;
  std::uint64_t patterns;

  explicit SweepDomain(int depth) : depth(depth) {
    z_words.emplace_back();
    for (int n = 1; n <= depth; ++n)
      for (auto& w : all_reduced_words(n)) z_words.push_back(std::move(w));
    patterns = 1;
    for (int i = 0; i < 2 * depth + 1; ++i) patterns *= 3;
  }

  std::uint64_t size() const { return patterns * z_words.size(); }

  ProductCylinder cylinder(std::uint64_t flat) const {
    ProductCylinder pc;
    pc.z_cyl = Cylinder{z_words[flat % z_words.size()]};
    std::uint64_t code = flat / z_words.size();
    for (int c = -depth; c <= depth; ++c) {
      const std::uint64_t digit = code % 3;
      code /= 3;
      if (digit != 0) pc.omega_constraints[c] = static_cast<std::uint8_t>(digit - 1);
    }
    return pc;
  }
};

struct WorstCell {
  bool failed = false;
  Rat diff;  // |lhs - rhs|, tracked even when zero
  std::uint64_t flat = 0;
  Rat lhs, rhs;
  bool set = false;

  // Total order used by the deterministic merge.
  bool worse_than(const WorstCell& o) const {
    if (!o.set) return set;
    if (!set) return false;
    if (diff != o.diff) return diff > o.diff;
    return flat < o.flat;
  }
};

SkewStationarityReport sweep_impl(const BernoulliParam& t, int depth,
                                  bool parallel) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  const SweepDomain domain(depth);
  const std::int64_t total = static_cast<std::int64_t>(domain.size());
  const Rat quarter(1, 4);

  WorstCell global;
  std::uint64_t failures = 0;

#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
  {
    WorstCell local;
    std::uint64_t local_failures = 0;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t f = 0; f < total; ++f) {
      const ProductCylinder pc = domain.cylinder(static_cast<std::uint64_t>(f));
      Rat lhs = 0;
      for (Letter g : kLetters) {
        Rat pre = 0;
        for (const ProductCylinder& part : preimage_product_cylinder(g, pc))
          pre += nu_measure(part, t);
        lhs += quarter * pre;
      }
      const Rat rhs = nu_measure(pc, t);
      Rat diff = lhs - rhs;
      if (diff < 0) diff = -diff;
      if (diff != 0) ++local_failures;
      WorstCell cell{diff != 0, diff, static_cast<std::uint64_t>(f), lhs, rhs,
                     true};
      if (cell.worse_than(local)) local = cell;
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    {
      if (local.worse_than(global)) global = local;
      failures += local_failures;
    }
  }

  SkewStationarityReport report;
  report.pass = failures == 0;
  report.cylinders_checked = domain.size();
  if (global.set) {
    report.worst = domain.cylinder(global.flat);
    report.worst_lhs = global.lhs;
    report.worst_rhs = global.rhs;
  }
  return report;
}

}  // namespace

SkewStationarityReport check_stationarity_skew(const BernoulliParam& t,
                                               int depth) {
  return sweep_impl(t, depth, true);
}

SkewStationarityReport check_stationarity_skew_serial(const BernoulliParam& t,
                                                      int depth) {
  return sweep_impl(t, depth, false);
}

EntropyValue entropy_skew_exact(const BernoulliParam& t) {
  const Rat quarter(1, 4);
  Rat q = 0;
  for (Letter g : kLetters) {
    for (int bit = 0; bit <= 1; ++bit) {
      for (Letter z1 : kLetters) {
        const Rat piece = (bit ? t.t() : (1 - t.t())) * quarter;
        const int k = bit ? (z1 == g ? 1 : -1) : 0;
        q -= quarter * piece * k;
      }
    }
  }
  return EntropyValue{q};
}

namespace {

constexpr std::size_t kChunk = 1024;

McEstimate skew_mc_impl(const BernoulliParam& t, std::size_t samples,
                        std::uint64_t seed, bool parallel) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const double log3 = std::log(3.0);
  const std::size_t nchunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> sums(nchunks, 0.0), sumsqs(nchunks, 0.0);

  const std::int64_t chunks = static_cast<std::int64_t>(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (std::int64_t c = 0; c < chunks; ++c) {
    double s = 0, s2 = 0;
    const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
    const std::size_t end = std::min(samples, begin + kChunk);
    for (std::size_t i = begin; i < end; ++i) {
      SkewPoint p = sample_skew_point(substream(seed, i).next(), t);
      double v = 0;
      for (Letter g : kLetters) v -= 0.25 * rn_exponent_skew(g, p).k * log3;
      s += v;
      s2 += v * v;
    }
    sums[static_cast<std::size_t>(c)] = s;
    sumsqs[static_cast<std::size_t>(c)] = s2;
  }

  double sum = 0, sumsq = 0;
  for (std::size_t j = 0; j < nchunks; ++j) {
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

}  // namespace

McEstimate entropy_skew_mc(const BernoulliParam& t, std::size_t samples,
                           std::uint64_t seed) {
  return skew_mc_impl(t, samples, seed, true);
}

McEstimate entropy_skew_mc_serial(const BernoulliParam& t, std::size_t samples,
                                  std::uint64_t seed) {
  return skew_mc_impl(t, samples, seed, false);
}

BernoulliParam realize_entropy(const Rat& q) {
  if (q < 0 || q > Rat(1, 2)) {
    throw OutOfRangeError("target coefficient outside [0, 1/2]");
  }
  return BernoulliParam(q * 2);
}

BirkhoffDiagnostic birkhoff_diagnostic(const BernoulliParam& t,
                                       std::uint64_t seed, std::size_t steps) {
  SplitMix64 rng = substream(seed, 0xB1FFull);
  SkewPoint p = sample_skew_point(rng.next(), t);
  double bit_sum = 0, first_a_sum = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    const Letter g = kLetters[bounded(rng, 4)];
    p = act_skew(g, std::move(p));
    bit_sum += p.omega.bit(0);
    p.ensure_z_depth(1);
    first_a_sum += (p.z[0] == Letter::a) ? 1.0 : 0.0;
  }
  BirkhoffDiagnostic d;
  d.steps = steps;
  if (steps > 0) {
    d.mean_bit = bit_sum / static_cast<double>(steps);
    d.mean_first_a = first_a_sum / static_cast<double>(steps);
  }
  return d;
}

}  // namespace fgl
