#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fglab/boundary.hpp"
#include "fglab/rng.hpp"

using namespace fgl;

namespace {

ReducedWord random_word(SplitMix64& rng, std::size_t max_len) {
  std::vector<Letter> raw(bounded(rng, max_len + 1));
  for (auto& x : raw) x = kLetters[bounded(rng, 4)];
  return ReducedWord::reduce(raw);
}

// Exactly depth-n reduced word from the eta Markov chain shape (uniform
// admissible continuation); used where tests need a prescribed length.
ReducedWord random_word_exact(SplitMix64& rng, std::size_t len) {
  ReducedWord w;
  while (w.size() < len) {
    const Letter x = kLetters[bounded(rng, 4)];
    if (!w.empty() && x == inverse(w.back())) continue;
    w.push_right(x);
  }
  return w;
}

// Brute-force preimage oracle: refine to depth |g| + depth(c) and test
// membership cylinder by cylinder through the boundary action.
std::set<ReducedWord> preimage_oracle(const ReducedWord& g, const Cylinder& c) {
  const int depth = static_cast<int>(g.size()) + c.depth();
  std::set<ReducedWord> atoms;
  if (depth == 0) {
    atoms.insert(ReducedWord{});
    return atoms;
  }
  for (const ReducedWord& z : all_reduced_words(depth)) {
    if (act_boundary(g, z, c.depth()) == c.prefix) atoms.insert(z);
  }
  return atoms;
}

// Refines a cylinder family to depth-`depth` atoms.
std::set<ReducedWord> refine(const std::vector<Cylinder>& parts, int depth) {
  std::set<ReducedWord> atoms;
  for (const Cylinder& part : parts) {
    REQUIRE(part.depth() <= depth);
    if (part.depth() == depth) {
      atoms.insert(part.prefix);
      continue;
    }
    // Extend by every admissible suffix.
    std::vector<ReducedWord> frontier{part.prefix};
    while (!frontier.empty() &&
           static_cast<int>(frontier.front().size()) < depth) {
      std::vector<ReducedWord> next;
      for (const auto& w : frontier) {
        for (Letter x : kLetters) {
          if (!w.empty() && x == inverse(w.back())) continue;
          ReducedWord e = w;
          e.push_right(x);
          next.push_back(std::move(e));
        }
      }
      frontier = std::move(next);
    }
    for (auto& w : frontier) {
      // Disjointness: no atom may be produced twice.
      REQUIRE(atoms.insert(std::move(w)).second);
    }
  }
  return atoms;
}

}  // namespace

TEST_CASE("eta values") {
  CHECK(eta(Cylinder{}) == 1);
  CHECK(eta(Cylinder{*ReducedWord::parse("a")}) == Rat(1, 4));
  CHECK(eta(Cylinder{*ReducedWord::parse("ab")}) == Rat(1, 12));
  CHECK(eta(Cylinder{*ReducedWord::parse("abaB")}) == Rat(1, 108));
}

TEST_CASE("eta additivity over one-letter extensions") {
  // Empty cylinder splits into the four depth-1 cylinders.
  Rat total = 0;
  for (Letter x : kLetters) total += eta(Cylinder{ReducedWord(x)});
  CHECK(total == eta(Cylinder{}));
  for (int n = 1; n <= 8; ++n) {
    for (const ReducedWord& w : all_reduced_words(n)) {
      Rat sum = 0;
      int children = 0;
      for (Letter x : kLetters) {
        if (x == inverse(w.back())) continue;
        ReducedWord e = w;
        e.push_right(x);
        sum += eta(Cylinder{e});
        ++children;
      }
      REQUIRE(children == 3);
      REQUIRE(sum == eta(Cylinder{w}));
    }
  }
}

TEST_CASE("boundary action examples") {
  CHECK(act_boundary(*ReducedWord::parse("a"), *ReducedWord::parse("bab"), 2) ==
        *ReducedWord::parse("ab"));
  CHECK(act_boundary(*ReducedWord::parse("A"), *ReducedWord::parse("abab"), 2) ==
        *ReducedWord::parse("ba"));
  CHECK(act_boundary(*ReducedWord::parse("ab"), *ReducedWord::parse("Baba"), 2) ==
        *ReducedWord::parse("aa"));
  CHECK_THROWS_AS(act_boundary(*ReducedWord::parse("ab"),
                               *ReducedWord::parse("Bab"), 2),
                  InsufficientDepthError);
}

TEST_CASE("boundary action output is stable under prefix extension") {
  SplitMix64 rng = substream(7, 1);
  for (int i = 0; i < 2000; ++i) {
    const ReducedWord g = random_word(rng, 3);
    const int out_depth = static_cast<int>(bounded(rng, 3)) + 1;
    const ReducedWord xi =
        random_word_exact(rng, g.size() + static_cast<std::size_t>(out_depth));
    ReducedWord deeper = xi;
    while (deeper.size() < xi.size() + 3) {
      const Letter x = kLetters[bounded(rng, 4)];
      if (x == inverse(deeper.back())) continue;
      deeper.push_right(x);
    }
    CHECK(act_boundary(g, xi, out_depth) == act_boundary(g, deeper, out_depth));
  }
}

TEST_CASE("preimage cylinder worked examples") {
  const Cylinder ca{*ReducedWord::parse("a")};
  auto got = preimage_cylinder(*ReducedWord::parse("A"), ca);
  REQUIRE(got.size() == 1);
  CHECK(got[0] == Cylinder{*ReducedWord::parse("aa")});

  got = preimage_cylinder(*ReducedWord::parse("a"), ca);
  std::set<ReducedWord> prefixes;
  for (const auto& c : got) prefixes.insert(c.prefix);
  CHECK(prefixes == std::set<ReducedWord>{*ReducedWord::parse("a"),
                                          *ReducedWord::parse("b"),
                                          *ReducedWord::parse("B")});

  const Cylinder cab{*ReducedWord::parse("ab")};
  got = preimage_cylinder(ReducedWord{}, cab);
  REQUIRE(got.size() == 1);
  CHECK(got[0] == cab);
}

TEST_CASE("preimage cylinder matches the brute-force oracle") {
  SplitMix64 rng = substream(7, 2);
  for (int i = 0; i < 400; ++i) {
    const ReducedWord g = random_word(rng, 3);
    const Cylinder c{random_word(rng, 3)};
    const auto parts = preimage_cylinder(g, c);
    const int depth = static_cast<int>(g.size()) + c.depth();
    const auto atoms = refine(parts, depth);  // also checks disjointness
    const auto expect = preimage_oracle(g, c);
    REQUIRE(atoms == expect);
    // Measure bookkeeping: component measures sum to the atom total.
    Rat part_total = 0;
    for (const auto& part : parts) part_total += eta(part);
    Rat atom_total = 0;
    for (const auto& atom : atoms) atom_total += eta(Cylinder{atom});
    REQUIRE(part_total == atom_total);
  }
}

TEST_CASE("derivative exponent examples") {
  CHECK(rn_exponent(*ReducedWord::parse("a"), *ReducedWord::parse("ab")).k == 1);
  CHECK(rn_exponent(*ReducedWord::parse("a"), *ReducedWord::parse("ba")).k == -1);
  CHECK(rn_exponent(ReducedWord{}, *ReducedWord::parse("b")).k == 0);
  CHECK(rn_exponent(*ReducedWord::parse("a"), *ReducedWord::parse("ab")).value() ==
        Rat(3));
  CHECK(rn_exponent(*ReducedWord::parse("a"), *ReducedWord::parse("ba")).value() ==
        Rat(1, 3));
  CHECK_THROWS_AS(rn_exponent(*ReducedWord::parse("ab"), *ReducedWord::parse("a")),
                  InsufficientDepthError);
}

TEST_CASE("derivative exponent equals the exact cylinder ratio") {
  SplitMix64 rng = substream(7, 3);
  for (int i = 0; i < 500; ++i) {
    const ReducedWord g = random_word(rng, 3);
    const ReducedWord xi = random_word_exact(rng, g.size() + 3);
    const int k = rn_exponent(g, xi).k;
    // Ratio eta(g^-1 C) / eta(C) over deep cylinders C containing xi.
    for (std::size_t depth = g.size() + 1; depth <= xi.size(); ++depth) {
      const Cylinder c{xi.prefix(depth)};
      Rat pre = 0;
      for (const auto& part : preimage_cylinder(g, c)) pre += eta(part);
      REQUIRE(pre == pow3(k) * eta(c));
    }
  }
}

TEST_CASE("cocycle identity for the derivative exponent") {
  // Chain rule under (g eta)(A) = eta(g^-1 A):
  //   k(gh, xi) = k(g, xi) + k(h, g^-1 xi).
  SplitMix64 rng = substream(7, 4);
  for (int i = 0; i < 10000; ++i) {
    const ReducedWord g = random_word(rng, 3);
    const ReducedWord h = random_word(rng, 3);
    const ReducedWord xi = random_word_exact(rng, g.size() + h.size() + 2);
    const ReducedWord gh = multiply(g, h);
    const int out_depth = static_cast<int>(xi.size() - g.size());
    const ReducedWord moved = act_boundary(inverse(g), xi, out_depth);
    REQUIRE(rn_exponent(gh, xi).k ==
            rn_exponent(g, xi).k + rn_exponent(h, moved).k);
  }
}

TEST_CASE("stationarity hand computation at depth 1") {
  // For C(a): (1/4) * (3/4 + 1/12 + 1/12 + 1/12) = 1/4.
  const Cylinder ca{*ReducedWord::parse("a")};
  Rat lhs = 0;
  for (Letter x : kLetters) {
    Rat pre = 0;
    for (const auto& part : preimage_cylinder(ReducedWord(x), ca))
      pre += eta(part);
    lhs += Rat(1, 4) * pre;
  }
  CHECK(lhs == Rat(1, 4));
}

TEST_CASE("exact stationarity up to depth 5") {
  for (int depth = 0; depth <= 5; ++depth) {
    const auto report = check_stationarity(depth);
    CHECK(report.pass);
  }
  const auto report = check_stationarity(5);
  CHECK(report.cylinders_checked == 1 + 4 + 12 + 36 + 108 + 324);
}

TEST_CASE("boundary entropy coefficient") {
  CHECK(entropy_boundary_exact().coefficient == Rat(1, 2));
  CHECK(entropy_boundary_exact().value() ==
        doctest::Approx(0.5493061443340549).epsilon(1e-12));

  // The same formal sum for a law supported on {a, a^-1} alone.
  StepDistribution m{{Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)}};
  REQUIRE(m.valid());
  CHECK(entropy_boundary_exact(m).coefficient == Rat(1, 2));

  // Identity-action shape of the sum: all exponents zero gives zero.
  Rat q = 0;
  for (Letter g : kLetters) {
    (void)g;
    for (Letter z1 : kLetters) {
      q -= Rat(1, 4) * eta(Cylinder{ReducedWord(z1)}) * 0;
    }
  }
  CHECK(q == 0);
}

TEST_CASE("step distribution validation") {
  CHECK(StepDistribution::uniform().valid());
  CHECK(!StepDistribution{{Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(0)}}.valid());
  CHECK(!StepDistribution{{Rat(-1, 4), Rat(1, 2), Rat(1, 2), Rat(1, 4)}}.valid());
}
