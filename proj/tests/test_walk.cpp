#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "fglab/walk.hpp"

using namespace fgl;

namespace {

const StepDistribution kDegenerateA{{Rat(1), Rat(0), Rat(0), Rat(0)}};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

TEST_CASE("walks are reproducible and consistent") {
  const WalkPath p1 = sample_walk(42, 1000);
  const WalkPath p2 = sample_walk(42, 1000);
  CHECK(p1.steps() == p2.steps());
  CHECK(p1.final_word() == p2.final_word());
  const WalkPath p3 = sample_walk(43, 1000);
  CHECK(p1.steps() != p3.steps());

  // positions[k] = positions[k-1] * step_k, lengths match replay.
  ReducedWord w;
  for (std::size_t k = 0; k <= 1000; ++k) {
    REQUIRE(p1.length_at(k) == w.size());
    if (k % 97 == 0) REQUIRE(p1.position(k) == w);
    if (k < 1000) w.push_right(p1.steps()[k]);
  }
}

TEST_CASE("zero-length walk stays at the identity") {
  const WalkPath p = sample_walk(7, 0);
  CHECK(p.step_count() == 0);
  CHECK(p.length_at(0) == 0);
  CHECK(p.final_word().empty());
  CHECK(!boundary_limit_prefix(p, 1, 10));
}

TEST_CASE("degenerate law forces monotone growth") {
  const WalkPath p = sample_walk(9, 50, kDegenerateA);
  for (std::size_t k = 0; k <= 50; ++k) CHECK(p.length_at(k) == k);
  const auto stab = boundary_limit_prefix(p, 3, 10);
  REQUIRE(stab.has_value());
  CHECK(stab->prefix == *ReducedWord::parse("aaa"));
  // Monotone growth pins the prefix from the first moment it exists.
  CHECK(stab->stable_from == 3);
}

TEST_CASE("stabilization is typical at moderate horizons") {
  int stabilized = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const WalkPath p = sample_walk(substream(11, seed).next(), 10000);
    if (boundary_limit_prefix(p, 2, 1000)) ++stabilized;
  }
  CHECK(stabilized > 990);
}

TEST_CASE("empirical depth-1 frequencies match the harmonic measure") {
  const auto census = empirical_cylinder_freq_serial(1234, 4000, 500, 1);
  REQUIRE(census.counts.size() == 4);
  CHECK(census.stabilized_runs > 3900);
  const double p = 0.25;
  const double sigma =
      std::sqrt(p * (1 - p) / static_cast<double>(census.stabilized_runs));
  for (std::uint64_t i = 0; i < 4; ++i) {
    CHECK(std::abs(census.frequency(i) - p) < 3 * sigma);
  }
}

TEST_CASE("degenerate law sends all mass to one cylinder") {
  const auto census =
      empirical_cylinder_freq_serial(5, 200, 100, 3, kDegenerateA);
  CHECK(census.stabilized_runs == 200);
  CHECK(census.counts[reduced_word_index(*ReducedWord::parse("aaa"))] == 200);
}

TEST_CASE("drift diagnostics") {
  CHECK(drift_estimate(3, 100000) == doctest::Approx(0.5).epsilon(0.04));
  CHECK(drift_estimate(8, 1000, kDegenerateA) == 1.0);
  const double d1 = drift_estimate(9, 1);
  CHECK((d1 == 0.0 || d1 == 1.0));
}

TEST_CASE("million-step walk builds in under a second") {
  const auto t0 = std::chrono::steady_clock::now();
  const WalkPath p = sample_walk(99, 1000000);
  const double elapsed = seconds_since(t0);
  CHECK(p.step_count() == 1000000);
  CHECK(elapsed < 1.0);
  // Escape to the boundary is linear; the length should be near n/2.
  CHECK(std::abs(static_cast<double>(p.length_at(1000000)) / 1e6 - 0.5) < 0.02);
}

TEST_CASE("Monte Carlo boundary entropy agrees with the exact value") {
  const auto est = entropy_boundary_mc_serial(2718, 100000, 200);
  const double exact = entropy_boundary_exact().value();
  REQUIRE(est.std_error > 0);
  CHECK(std::abs(est.mean - exact) <= 3 * est.std_error);
}
