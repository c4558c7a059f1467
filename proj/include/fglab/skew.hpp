#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fglab/boundary.hpp"
#include "fglab/rng.hpp"
#include "fglab/walk.hpp"
#include "fglab/words.hpp"

namespace fgl {

struct OutOfRangeError : std::domain_error {
  using std::domain_error::domain_error;
};

// Coin bias t as an exact rational in [0, 1].
class BernoulliParam {
 public:
  explicit BernoulliParam(Rat t);
  const Rat& t() const { return t_; }
  // t as an exact uint64 fraction, for samplers.
  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }

 private:
  Rat t_;
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

// A two-sided binary sequence seen through a finite window. Coordinates are
// relative to the current origin; the shift re-indexes instead of copying.
// Reads outside the window extend it deterministically: the bit at absolute
// slot j is an exact Bernoulli(t) draw from substream(extension_seed, j).
class BinaryWindow {
 public:
  BinaryWindow(std::uint64_t extension_seed, const BernoulliParam& t)
      : seed_(extension_seed), num_(t.num()), den_(t.den()) {}

  std::uint8_t bit(std::int64_t i);
  void force_bit(std::int64_t i, std::uint8_t value);
  bool covers(std::int64_t i) const;

  // omega -> sigma omega: new coordinate i reads old coordinate i + 1.
  void shift_fwd() { ++origin_; }
  // omega -> sigma^{-1} omega.
  void shift_back() { --origin_; }

  std::int64_t origin() const { return origin_; }
  std::size_t stored_bits() const { return bits_.size(); }

 private:
  std::map<std::int64_t, std::uint8_t> bits_;  // keyed by absolute slot
  std::int64_t origin_ = 0;
  std::uint64_t seed_;
  std::uint64_t num_, den_;
};

// A point (omega, z) of the product system. z is a reduced prefix of a
// boundary word; if a tail sampler is attached, the prefix extends lazily
// with the harmonic conditional law (first letter uniform over 4, each
// further letter uniform over the 3 letters that keep the word reduced).
struct ZTail {
  std::uint64_t seed = 0;
  std::uint64_t drawn = 0;
  std::optional<Letter> last_drawn;  // survives cancellation of the prefix
};

struct SkewPoint {
  BinaryWindow omega;
  ReducedWord z;
  std::optional<ZTail> z_tail;

  // Guarantees z has at least `depth` letters; throws InsufficientDepthError
  // when no tail sampler is attached.
  void ensure_z_depth(std::size_t depth);
};

// Fresh point distributed as mu_t x eta (all coordinates lazily sampled).
SkewPoint sample_skew_point(std::uint64_t seed, const BernoulliParam& t);

// Generator action: a and b read the bit at coordinate 0 and shift forward;
// their inverses read coordinate -1 and shift backward. The read bit decides
// whether the boundary coordinate moves by the letter.
SkewPoint act_skew(Letter g, SkewPoint p);

// Coordinate whose bit the derivative of g reads at the arrival point: the
// bit that drove the g-step into p, i.e. the driving coordinate of g^-1.
constexpr std::int64_t rn_bit_coordinate(Letter g) {
  return (g == Letter::a || g == Letter::b) ? -1 : 0;
}

// Exponent k with d(g nu_t)/d nu_t (p) = 3^k: zero when the relevant bit is
// 0, otherwise the boundary exponent of g at z.
RNExponent rn_exponent_skew(Letter g, SkewPoint& p);

// Finitely many omega-coordinate constraints plus a boundary cylinder.
struct ProductCylinder {
  std::map<std::int64_t, std::uint8_t> omega_constraints;
  Cylinder z_cyl;

  bool operator==(const ProductCylinder&) const = default;
};

// nu_t measure: product of per-coordinate factors times eta(z_cyl). Exact.
Rat nu_measure(const ProductCylinder& pc, const BernoulliParam& t);

// Disjoint product cylinders whose union is {p : g p in pc}.
std::vector<ProductCylinder> preimage_product_cylinder(
    Letter g, const ProductCylinder& pc);

struct SkewStationarityReport {
  bool pass = true;
  std::uint64_t cylinders_checked = 0;
  ProductCylinder worst;
  Rat worst_lhs;
  Rat worst_rhs;
};

// Exact verification of sum_g m(g) nu_t(g^-1 A) = nu_t(A) over every product
// cylinder with z-depth <= depth and omega-constraints contained in
// {-depth..depth} (m uniform). OpenMP-parallel with a deterministic
// worst-offender merge; the serial twin is kept for testing.
SkewStationarityReport check_stationarity_skew(const BernoulliParam& t,
                                               int depth);
SkewStationarityReport check_stationarity_skew_serial(const BernoulliParam& t,
                                                      int depth);

// Exact entropy coefficient q(t): finite sum over the per-generator
// partition {derivative bit} x {first z-letter}.
EntropyValue entropy_skew_exact(const BernoulliParam& t);

// Monte Carlo entropy: averages -sum_g m(g) k(g, p) log 3 over points
// p ~ nu_t. Parallel with fixed-chunk reduction; bitwise equal to the
// serial twin.
McEstimate entropy_skew_mc(const BernoulliParam& t, std::size_t samples,
                           std::uint64_t seed);
McEstimate entropy_skew_mc_serial(const BernoulliParam& t, std::size_t samples,
                                  std::uint64_t seed);

// Bias t whose system realizes entropy coefficient q; requires
// 0 <= q <= 1/2.
BernoulliParam realize_entropy(const Rat& q);

// Statistical (non-certifying) ergodicity diagnostic: time averages of two
// simple observables along a trajectory p_{k+1} = g_{k+1} p_k with uniform
// letters, against their nu_t expectations t and 1/4.
struct BirkhoffDiagnostic {
  double mean_bit = 0;        // average of omega_0, expect t
  double mean_first_a = 0;    // average of [z_1 = a], expect 1/4
  std::size_t steps = 0;
};
BirkhoffDiagnostic birkhoff_diagnostic(const BernoulliParam& t,
                                       std::uint64_t seed, std::size_t steps);

}  // namespace fgl
