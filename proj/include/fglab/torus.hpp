#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fglab/rational.hpp"
#include "fglab/rng.hpp"

namespace fgl {

struct RegularOnBlownOrbitError : std::logic_error {
  using std::logic_error::logic_error;
};

// 2x2 integer matrix. Torus and blow-up actions require det = +1; the raw
// struct is kept open so tests can build degenerate fixtures.
struct Mat2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  bool unimodular() const { return det() == 1; }
  Mat2 inverse() const;  // valid for det = +/-1
  bool operator==(const Mat2&) const = default;

  static Mat2 gen_s() { return Mat2{0, -1, 1, 0}; }   // rotation generator
  static Mat2 gen_t() { return Mat2{1, 1, 0, 1}; }    // shear generator
};

Mat2 operator*(const Mat2& lhs, const Mat2& rhs);

// The four walk generators S, S^-1, T, T^-1 in a fixed order.
enum class TorusGen : std::uint8_t { S = 0, Sinv = 1, T = 2, Tinv = 3 };
Mat2 gen_matrix(TorusGen g);

// Exact rational torus point nx/q, ny/q in [0,1)^2, stored in lowest common
// terms (q > 0, gcd(nx, ny, q) = 1). Integer matrices preserve the
// denominator.
struct TorusPointRational {
  std::int64_t nx = 0, ny = 0, q = 1;

  TorusPointRational() = default;
  TorusPointRational(std::int64_t nx, std::int64_t ny, std::int64_t q);
  static std::optional<TorusPointRational> parse(std::string_view xs,
                                                 std::string_view ys);

  Rat x() const { return Rat(nx, q); }
  Rat y() const { return Rat(ny, q); }
  double xd() const { return static_cast<double>(nx) / static_cast<double>(q); }
  double yd() const { return static_cast<double>(ny) / static_cast<double>(q); }

  bool operator==(const TorusPointRational&) const = default;
  auto operator<=>(const TorusPointRational&) const = default;
};

struct TorusPointReal {
  double x = 0, y = 0;  // reduced mod 1 into [0,1)
  bool operator==(const TorusPointReal&) const = default;
};

TorusPointRational apply_torus(const Mat2& m, const TorusPointRational& p);
TorusPointReal apply_torus(const Mat2& m, const TorusPointReal& p);

// A line through the origin, stored as a unit vector with the first nonzero
// coordinate positive (v and -v name the same line).
struct ProjLine {
  double dx = 1, dy = 0;

  static ProjLine from_direction(double x, double y);
  bool operator==(const ProjLine&) const = default;
};

ProjLine apply_proj(const Mat2& m, const ProjLine& line);
// Angle between two lines, in [0, pi/2].
double line_angle(const ProjLine& u, const ProjLine& v);

// Finite orbit of a rational point under the group generated by S and T.
struct PeriodicOrbit {
  std::vector<TorusPointRational> points;  // sorted, unique

  bool contains(const TorusPointRational& p) const;
  std::size_t size() const { return points.size(); }
};

PeriodicOrbit enumerate_orbit(const TorusPointRational& p);

// A point of the blown-up space: either an untouched torus point or a
// (base, projective line) pair over a registered periodic orbit.
struct FiberPoint {
  int orbit_id = 0;
  TorusPointRational base;
  ProjLine line;
  bool operator==(const FiberPoint&) const = default;
};
using BlowupPoint = std::variant<TorusPointReal, FiberPoint>;

// The registry of blown-up orbits. Orbit n carries fibers of diameter
// 2^-n; the default registry holds the first two orbits of the fixed
// enumeration (by denominator, then lexicographic base point): the origin
// and the half-integer orbit.
class BlowupSpace {
 public:
  static BlowupSpace first_orbits(int count);

  const std::vector<PeriodicOrbit>& orbits() const { return orbits_; }
  double epsilon(int orbit_id) const;
  std::optional<int> orbit_of(const TorusPointRational& p) const;

 private:
  std::vector<PeriodicOrbit> orbits_;
};

BlowupPoint apply_blowup(const Mat2& m, const BlowupPoint& p,
                         const BlowupSpace& space);

// Distance realizing the blow-up topology: torus distance between the
// underlying base points, plus for every registered base a cone
// pseudometric on (fiber radius seen from the point, line) pairs. Fiber
// points over a base carry the full radius eps_n and their own line; other
// points carry the chord line from that base and a radius decaying to zero
// at torus distance eps_n / 2. Same-base fiber distances come out as
// eps_n * angle / (pi/2), so each fiber has diameter exactly eps_n, and
// points away from every registered base are at plain torus distance.
double blowup_metric(const BlowupPoint& p, const BlowupPoint& q,
                     const BlowupSpace& space);

// Flat torus distance.
double torus_metric(double x1, double y1, double x2, double y2);

// Collapses fibers to their base points.
std::variant<TorusPointRational, TorusPointReal> factor_map(
    const BlowupPoint& p);

struct InvarianceReport {
  bool pass = true;
  std::string detail;
};

// Character test for invariance of Lebesgue measure: every nonzero
// frequency (m, n) with |m|, |n| <= max_freq must pull back to a nonzero
// frequency. Exact integer arithmetic.
InvarianceReport check_lebesgue_invariance(const Mat2& m, int max_freq);

// Each generator must permute the orbit, making the uniform measure on it
// invariant. Exact.
InvarianceReport check_orbit_measure_invariance(const PeriodicOrbit& orbit);

struct WitnessReport {
  bool stayed = true;
  std::size_t steps = 0;
  std::vector<TorusPointRational> visited_bases;  // unique, in first-visit order
};

// Applies the word to a fiber start point and verifies every intermediate
// point stays a fiber point with the same orbit id.
WitnessReport nonminimality_witness(const BlowupSpace& space,
                                    const std::vector<TorusGen>& word,
                                    const FiberPoint& start);

// Ensemble version: `words` random words of length `steps` (substreams of
// seed), all starting from `start`. Returns the number of runs that stayed
// inside the fiber bundle. OpenMP-parallel; serial twin kept for testing.
std::size_t witness_ensemble(const BlowupSpace& space, const FiberPoint& start,
                             std::size_t words, std::size_t steps,
                             std::uint64_t seed);
std::size_t witness_ensemble_serial(const BlowupSpace& space,
                                    const FiberPoint& start, std::size_t words,
                                    std::size_t steps, std::uint64_t seed);

// Average of exp(2 pi i (m x + n y)) along a matrix random walk started at
// `start`, with rational weights on (S, S^-1, T, T^-1). Small modulus is
// evidence of equidistribution toward Lebesgue measure.
struct CharacterAverage {
  std::complex<double> mean;
  double modulus = 0;
  std::size_t steps = 0;
};
CharacterAverage character_walk_average(
    std::uint64_t seed, std::size_t steps, const TorusPointReal& start,
    std::int64_t char_m, std::int64_t char_n,
    const std::array<Rat, 4>& weights = {Rat(1, 4), Rat(1, 4), Rat(1, 4),
                                         Rat(1, 4)});

}  // namespace fgl
