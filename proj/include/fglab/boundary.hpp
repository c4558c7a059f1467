#pragma once

#include <stdexcept>
#include <vector>

#include "fglab/rational.hpp"
#include "fglab/words.hpp"

namespace fgl {

// Thrown when a finite prefix is too short to determine the requested
// output; the caller should retry with a deeper prefix.
struct InsufficientDepthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cylinder C(u_1,...,u_n): boundary words starting with the reduced prefix.
// The empty prefix is the whole boundary.
struct Cylinder {
  ReducedWord prefix;

  int depth() const { return static_cast<int>(prefix.size()); }
  bool operator==(const Cylinder&) const = default;
  auto operator<=>(const Cylinder&) const = default;
};

// Step law of the walk: rational weights on (a, a^-1, b, b^-1) summing to 1.
struct StepDistribution {
  std::array<Rat, 4> weights;

  static StepDistribution uniform() {
    return StepDistribution{{Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)}};
  }
  const Rat& weight(Letter x) const {
    return weights[static_cast<std::size_t>(x)];
  }
  bool valid() const;
};

// Radon-Nikodym derivative stored as its exact exponent: value 3^k.
struct RNExponent {
  int k = 0;
  Rat value() const { return pow3(k); }
};

// Entropy as an exact rational coefficient q, meaning q * log 3.
struct EntropyValue {
  Rat coefficient;
  double value() const;
};

// Exact harmonic measure of a cylinder: 1 for the empty prefix,
// 1/(4*3^(n-1)) at depth n >= 1.
Rat eta(const Cylinder& c);

// First out_depth letters of g acting on a boundary word known through
// `prefix`. Requires prefix.size() >= out_depth + g.size() so that
// cancellation cannot reach the requested output; the result is then stable
// under any extension of the prefix.
ReducedWord act_boundary(const ReducedWord& g, const ReducedWord& prefix,
                         int out_depth);

// Pairwise-disjoint cylinders whose union is {z : g z in c}.
std::vector<Cylinder> preimage_cylinder(const ReducedWord& g, const Cylinder& c);

// Exponent k with d(g eta)/d eta (xi) = 3^k, read off a prefix of xi.
// Requires xi_prefix.size() >= g.size(); the value is stable under deeper
// prefixes.
RNExponent rn_exponent(const ReducedWord& g, const ReducedWord& xi_prefix);

struct StationarityReport {
  bool pass = true;
  std::uint64_t cylinders_checked = 0;
  // Worst offender (largest |lhs - rhs|, first in enumeration order on ties).
  Cylinder worst;
  Rat worst_lhs;
  Rat worst_rhs;
};

// Verifies sum_g m(g) * eta(g^-1 C) = eta(C) exactly for every cylinder of
// depth <= depth (including the empty one).
StationarityReport check_stationarity(int depth,
                                      const StepDistribution& m =
                                          StepDistribution::uniform());

// Exact Furstenberg entropy coefficient of the boundary: the finite sum
// -sum_g m(g) sum_{|C|=1} eta(C) * k(g, C), exploiting that the derivative
// exponent of a single letter is constant on depth-1 cylinders.
EntropyValue entropy_boundary_exact(const StepDistribution& m =
                                        StepDistribution::uniform());

}  // namespace fgl
