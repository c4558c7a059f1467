#include "fglab/boundary.hpp"

#include <cmath>

namespace fgl {

bool StepDistribution::valid() const {
  Rat total = 0;
  for (const Rat& w : weights) {
    if (w < 0) return false;
    total += w;
  }
  return total == 1;
}

double EntropyValue::value() const {
  return to_double(coefficient) * std::log(3.0);
}

Rat eta(const Cylinder& c) {
  const int n = c.depth();
  if (n == 0) return Rat(1);
  Int den = 4;
  for (int i = 1; i < n; ++i) den *= 3;
  return Rat(Int(1), den);
}

ReducedWord act_boundary(const ReducedWord& g, const ReducedWord& prefix,
                         int out_depth) {
  if (out_depth < 0) throw std::invalid_argument("out_depth must be >= 0");
  if (prefix.size() < g.size() + static_cast<std::size_t>(out_depth)) {
    throw InsufficientDepthError(
        "boundary action needs prefix depth >= out_depth + |g|");
  }
  return multiply(g, prefix).prefix(out_depth);
}

// The preimage {z : g z in C(w)} splits by k = |common prefix of z and
// g^-1| (the number of letters of g cancelled). For k < |g| the image is
// g[0..|g|-k) followed by the tail of z; for k = |g| it is z shifted by
// |g|. Each branch contributes at most one cylinder.
std::vector<Cylinder> preimage_cylinder(const ReducedWord& g,
                                        const Cylinder& c) {
  const ReducedWord& w = c.prefix;
  if (g.empty()) return {c};

  std::vector<Cylinder> out;
  const ReducedWord ginv = inverse(g);
  const std::size_t glen = g.size();

  for (std::size_t k = 0; k < glen; ++k) {
    // z = ginv[0..k) x tail with x != ginv[k]; then g z = rem x tail,
    // rem = g[0..glen-k).
    const ReducedWord head = ginv.prefix(k);
    const ReducedWord rem = g.prefix(glen - k);
    for (Letter x : kLetters) {
      if (x == ginv[k]) continue;                       // belongs to branch k+1
      if (k > 0 && x == inverse(head.back())) continue; // z not reduced
      if (rem.size() + 1 >= w.size()) {
        // Image prefix rem x already covers w: pure membership check.
        bool match = true;
        for (std::size_t i = 0; i < w.size(); ++i) {
          const Letter img = (i < rem.size()) ? rem[i] : x;
          if (img != w[i]) {
            match = false;
            break;
          }
        }
        if (!match) continue;
        ReducedWord z = head;
        z.push_right(x);
        out.push_back(Cylinder{z});
      } else {
        // Need rem x = w[0..rem+1) and the tail to continue along w.
        bool match = w.starts_with(rem) && w[rem.size()] == x;
        if (!match) continue;
        ReducedWord z = head;
        z.push_right(x);
        for (std::size_t i = rem.size() + 1; i < w.size(); ++i)
          z.push_right(w[i]);
        out.push_back(Cylinder{z});
      }
    }
  }

  // k = |g|: all of g cancels, g z = z shifted by |g|; the next letter of z
  // cannot be g[0], so the branch is empty if w starts with g[0].
  if (w.empty() || w[0] != g[0]) {
    ReducedWord z = ginv;
    for (Letter x : w) z.push_right(x);
    out.push_back(Cylinder{z});
  }
  return out;
}

RNExponent rn_exponent(const ReducedWord& g, const ReducedWord& xi_prefix) {
  if (xi_prefix.size() < g.size()) {
    throw InsufficientDepthError("derivative exponent needs |xi| >= |g|");
  }
  const int cpl = static_cast<int>(common_prefix_len(g, xi_prefix));
  return RNExponent{2 * cpl - static_cast<int>(g.size())};
}

StationarityReport check_stationarity(int depth, const StepDistribution& m) {
  StationarityReport report;
  bool have_worst = false;
  Rat worst_diff = 0;

  auto check_one = [&](const Cylinder& c) {
    Rat lhs = 0;
    for (Letter x : kLetters) {
      ReducedWord g(x);
      Rat pre = 0;
      for (const Cylinder& part : preimage_cylinder(g, c)) pre += eta(part);
      lhs += m.weight(x) * pre;
    }
    const Rat rhs = eta(c);
    ++report.cylinders_checked;
    Rat diff = lhs - rhs;
    if (diff < 0) diff = -diff;
    if (diff != 0) report.pass = false;
    if (!have_worst || diff > worst_diff) {
      have_worst = true;
      worst_diff = diff;
      report.worst = c;
      report.worst_lhs = lhs;
      report.worst_rhs = rhs;
    }
  };

  check_one(Cylinder{});
  for (int n = 1; n <= depth; ++n)
    for (const ReducedWord& w : all_reduced_words(n)) check_one(Cylinder{w});
  return report;
}

EntropyValue entropy_boundary_exact(const StepDistribution& m) {
  Rat q = 0;
  for (Letter x : kLetters) {
    const ReducedWord g(x);
    for (Letter z1 : kLetters) {
      const Cylinder cell{ReducedWord(z1)};
      const int k = rn_exponent(g, cell.prefix).k;
      q -= m.weight(x) * eta(cell) * k;
    }
  }
  return EntropyValue{q};
}

}  // namespace fgl
