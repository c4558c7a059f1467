#include "fglab/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "fglab/sampling.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fgl {

Mat2 Mat2::inverse() const {
  const std::int64_t dt = det();
  if (dt == 1) return Mat2{d, -b, -c, a};
  if (dt == -1) return Mat2{-d, b, c, -a};
  throw std::invalid_argument("matrix not invertible over the integers");
}

Mat2 operator*(const Mat2& lhs, const Mat2& rhs) {
  return Mat2{lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
              lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

Mat2 gen_matrix(TorusGen g) {
  switch (g) {
    case TorusGen::S: return Mat2::gen_s();
    case TorusGen::Sinv: return Mat2::gen_s().inverse();
    case TorusGen::T: return Mat2::gen_t();
    case TorusGen::Tinv: return Mat2::gen_t().inverse();
  }
  throw std::invalid_argument("bad generator");
}

namespace {

std::int64_t mod_pos(std::int64_t v, std::int64_t q) {
  const std::int64_t r = v % q;
  return r < 0 ? r + q : r;
}

double mod1(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0) r = 0.0;  // guard against floor rounding at the edge
  return r;
}

// Shortest signed displacement on the circle, in [-1/2, 1/2].
double wrap_half(double v) { return v - std::round(v); }

}  // namespace

TorusPointRational::TorusPointRational(std::int64_t nx_, std::int64_t ny_,
                                       std::int64_t q_) {
  if (q_ <= 0) throw std::invalid_argument("denominator must be positive");
  nx = mod_pos(nx_, q_);
  ny = mod_pos(ny_, q_);
  q = q_;
  const std::int64_t g = std::gcd(std::gcd(nx, ny), q);
  if (g > 1) {
    nx /= g;
    ny /= g;
    q /= g;
  }
}

std::optional<TorusPointRational> TorusPointRational::parse(
    std::string_view xs, std::string_view ys) {
  const auto x = parse_rational(xs);
  const auto y = parse_rational(ys);
  if (!x || !y) return std::nullopt;
  const Int den = lcm(denominator(*x), denominator(*y));
  if (den > std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  const Int nx = numerator(*x) * (den / denominator(*x));
  const Int ny = numerator(*y) * (den / denominator(*y));
  return TorusPointRational(nx.convert_to<std::int64_t>(),
                            ny.convert_to<std::int64_t>(),
                            den.convert_to<std::int64_t>());
}

TorusPointRational apply_torus(const Mat2& m, const TorusPointRational& p) {
  using I128 = __int128;
  const I128 vx = I128(m.a) * p.nx + I128(m.b) * p.ny;
  const I128 vy = I128(m.c) * p.nx + I128(m.d) * p.ny;
  const I128 q = p.q;
  auto mod_q = [&](I128 v) {
    I128 r = v % q;
    if (r < 0) r += q;
    return static_cast<std::int64_t>(r);
  };
  return TorusPointRational(mod_q(vx), mod_q(vy), p.q);
}

TorusPointReal apply_torus(const Mat2& m, const TorusPointReal& p) {
  return TorusPointReal{
      mod1(static_cast<double>(m.a) * p.x + static_cast<double>(m.b) * p.y),
      mod1(static_cast<double>(m.c) * p.x + static_cast<double>(m.d) * p.y)};
}

ProjLine ProjLine::from_direction(double x, double y) {
  const double norm = std::hypot(x, y);
  if (norm == 0.0) throw std::invalid_argument("zero direction");
  double dx = x / norm, dy = y / norm;
  if (dx < 0 || (dx == 0 && dy < 0)) {
    dx = -dx;
    dy = -dy;
  }
  if (dx == 0) dx = 0.0;  // normalize -0
  return ProjLine{dx, dy};
}

ProjLine apply_proj(const Mat2& m, const ProjLine& line) {
  return ProjLine::from_direction(
      static_cast<double>(m.a) * line.dx + static_cast<double>(m.b) * line.dy,
      static_cast<double>(m.c) * line.dx + static_cast<double>(m.d) * line.dy);
}

double line_angle(const ProjLine& u, const ProjLine& v) {
  const double dot = std::abs(u.dx * v.dx + u.dy * v.dy);
  return std::acos(std::min(1.0, dot));
}

bool PeriodicOrbit::contains(const TorusPointRational& p) const {
  return std::binary_search(points.begin(), points.end(), p);
}

PeriodicOrbit enumerate_orbit(const TorusPointRational& p) {
  const std::array<Mat2, 4> gens = {Mat2::gen_s(), Mat2::gen_s().inverse(),
                                    Mat2::gen_t(), Mat2::gen_t().inverse()};
  std::set<TorusPointRational> seen{p};
  std::vector<TorusPointRational> frontier{p};
  while (!frontier.empty()) {
    std::vector<TorusPointRational> next;
    for (const auto& pt : frontier) {
      for (const Mat2& g : gens) {
        TorusPointRational img = apply_torus(g, pt);
        if (seen.insert(img).second) next.push_back(img);
      }
    }
    frontier = std::move(next);
  }
  PeriodicOrbit orbit;
  orbit.points.assign(seen.begin(), seen.end());
  return orbit;
}

BlowupSpace BlowupSpace::first_orbits(int count) {
  BlowupSpace space;
  for (std::int64_t q = 1; static_cast<int>(space.orbits_.size()) < count; ++q) {
    for (std::int64_t nx = 0; nx < q; ++nx) {
      for (std::int64_t ny = 0; ny < q; ++ny) {
        const TorusPointRational p(nx, ny, q);
        if (p.q != q) continue;  // not in lowest terms with denominator q
        if (space.orbit_of(p)) continue;
        space.orbits_.push_back(enumerate_orbit(p));
        if (static_cast<int>(space.orbits_.size()) == count) return space;
      }
    }
  }
  return space;
}

double BlowupSpace::epsilon(int orbit_id) const {
  return std::exp2(-static_cast<double>(orbit_id));
}

std::optional<int> BlowupSpace::orbit_of(const TorusPointRational& p) const {
  for (std::size_t i = 0; i < orbits_.size(); ++i)
    if (orbits_[i].contains(p)) return static_cast<int>(i);
  return std::nullopt;
}

BlowupPoint apply_blowup(const Mat2& m, const BlowupPoint& p,
                         const BlowupSpace& space) {
  if (const auto* reg = std::get_if<TorusPointReal>(&p)) {
    for (const auto& orbit : space.orbits()) {
      for (const auto& base : orbit.points) {
        if (reg->x == base.xd() && reg->y == base.yd()) {
          throw RegularOnBlownOrbitError(
              "regular point sits on a blown-up orbit");
        }
      }
    }
    return apply_torus(m, *reg);
  }
  const auto& fib = std::get<FiberPoint>(p);
  return FiberPoint{fib.orbit_id, apply_torus(m, fib.base),
                    apply_proj(m, fib.line)};
}

double torus_metric(double x1, double y1, double x2, double y2) {
  return std::hypot(wrap_half(x1 - x2), wrap_half(y1 - y2));
}

namespace {

struct BasePos {
  double x, y;
};

BasePos position_of(const BlowupPoint& p) {
  if (const auto* reg = std::get_if<TorusPointReal>(&p))
    return BasePos{reg->x, reg->y};
  const auto& fib = std::get<FiberPoint>(p);
  return BasePos{fib.base.xd(), fib.base.yd()};
}

// Fiber data of point p as seen from registered base (orbit_id, b):
// radius 0 turns off the angle term.
struct FiberView {
  double radius = 0;
  bool has_line = false;
  ProjLine line;
};

FiberView view_from(const BlowupPoint& p, int orbit_id,
                    const TorusPointRational& b, double eps) {
  FiberView v;
  if (const auto* fib = std::get_if<FiberPoint>(&p)) {
    if (fib->orbit_id == orbit_id && fib->base == b) {
      v.radius = eps;
      v.has_line = true;
      v.line = fib->line;
      return v;
    }
  }
  const BasePos pos = position_of(p);
  const double dist = torus_metric(pos.x, pos.y, b.xd(), b.yd());
  v.radius = std::max(0.0, eps - 2.0 * dist);
  if (v.radius > 0 && dist > 0) {
    v.has_line = true;
    v.line = ProjLine::from_direction(wrap_half(pos.x - b.xd()),
                                      wrap_half(pos.y - b.yd()));
  }
  return v;
}

}  // namespace

double blowup_metric(const BlowupPoint& p, const BlowupPoint& q,
                     const BlowupSpace& space) {
  const BasePos pp = position_of(p), qq = position_of(q);
  double d = torus_metric(pp.x, pp.y, qq.x, qq.y);
  for (std::size_t n = 0; n < space.orbits().size(); ++n) {
    const double eps = space.epsilon(static_cast<int>(n));
    for (const auto& base : space.orbits()[n].points) {
      const FiberView vp = view_from(p, static_cast<int>(n), base, eps);
      const FiberView vq = view_from(q, static_cast<int>(n), base, eps);
      d += std::abs(vp.radius - vq.radius);
      const double lo = std::min(vp.radius, vq.radius);
      if (lo > 0 && vp.has_line && vq.has_line) {
        d += lo * line_angle(vp.line, vq.line) / (std::numbers::pi / 2);
      }
    }
  }
  return d;
}

std::variant<TorusPointRational, TorusPointReal> factor_map(
    const BlowupPoint& p) {
  if (const auto* reg = std::get_if<TorusPointReal>(&p)) return *reg;
  return std::get<FiberPoint>(p).base;
}

InvarianceReport check_lebesgue_invariance(const Mat2& m, int max_freq) {
  for (std::int64_t fm = -max_freq; fm <= max_freq; ++fm) {
    for (std::int64_t fn = -max_freq; fn <= max_freq; ++fn) {
      if (fm == 0 && fn == 0) continue;
      // Row vector times matrix: the pulled-back character frequency.
      const std::int64_t gm = fm * m.a + fn * m.c;
      const std::int64_t gn = fm * m.b + fn * m.d;
      if (gm == 0 && gn == 0) {
        InvarianceReport r;
        r.pass = false;
        r.detail = "frequency (" + std::to_string(fm) + "," +
                   std::to_string(fn) + ") collapses to zero";
        return r;
      }
    }
  }
  return InvarianceReport{true, "all pulled-back frequencies nonzero"};
}

InvarianceReport check_orbit_measure_invariance(const PeriodicOrbit& orbit) {
  const std::array<Mat2, 4> gens = {Mat2::gen_s(), Mat2::gen_s().inverse(),
                                    Mat2::gen_t(), Mat2::gen_t().inverse()};
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    std::set<TorusPointRational> image;
    for (const auto& p : orbit.points) {
      const TorusPointRational img = apply_torus(gens[gi], p);
      if (!orbit.contains(img)) {
        InvarianceReport r;
        r.pass = false;
        r.detail = "generator " + std::to_string(gi) + " leaves the set";
        return r;
      }
      image.insert(img);
    }
    if (image.size() != orbit.points.size()) {
      InvarianceReport r;
      r.pass = false;
      r.detail = "generator " + std::to_string(gi) + " not injective on set";
      return r;
    }
  }
  return InvarianceReport{true, "every generator permutes the orbit"};
}

WitnessReport nonminimality_witness(const BlowupSpace& space,
                                    const std::vector<TorusGen>& word,
                                    const FiberPoint& start) {
  WitnessReport report;
  const auto& orbit = space.orbits().at(static_cast<std::size_t>(start.orbit_id));
  BlowupPoint current = start;
  auto record = [&](const TorusPointRational& b) {
    if (std::find(report.visited_bases.begin(), report.visited_bases.end(), b) ==
        report.visited_bases.end()) {
      report.visited_bases.push_back(b);
    }
  };
  if (!orbit.contains(start.base)) report.stayed = false;
  record(start.base);
  for (TorusGen g : word) {
    current = apply_blowup(gen_matrix(g), current, space);
    ++report.steps;
    const auto* fib = std::get_if<FiberPoint>(&current);
    if (!fib || fib->orbit_id != start.orbit_id || !orbit.contains(fib->base)) {
      report.stayed = false;
      break;
    }
    record(fib->base);
  }
  return report;
}

namespace {

bool witness_one(const BlowupSpace& space, const FiberPoint& start,
                 std::size_t steps, SplitMix64 rng) {
  const auto& orbit = space.orbits().at(static_cast<std::size_t>(start.orbit_id));
  if (!orbit.contains(start.base)) return false;
  FiberPoint current = start;
  for (std::size_t k = 0; k < steps; ++k) {
    const TorusGen g = static_cast<TorusGen>(bounded(rng, 4));
    const BlowupPoint next = apply_blowup(gen_matrix(g), current, space);
    const auto* fib = std::get_if<FiberPoint>(&next);
    if (!fib || fib->orbit_id != start.orbit_id || !orbit.contains(fib->base))
      return false;
    current = *fib;
  }
  return true;
}

std::size_t witness_ensemble_impl(const BlowupSpace& space,
                                  const FiberPoint& start, std::size_t words,
                                  std::size_t steps, std::uint64_t seed,
                                  bool parallel) {
  const std::int64_t n = static_cast<std::int64_t>(words);
  std::int64_t stayed = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : stayed) if (parallel)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    if (witness_one(space, start, steps,
                    substream(seed, static_cast<std::uint64_t>(i))))
      ++stayed;
  }
  return static_cast<std::size_t>(stayed);
}

}  // namespace

std::size_t witness_ensemble(const BlowupSpace& space, const FiberPoint& start,
                             std::size_t words, std::size_t steps,
                             std::uint64_t seed) {
  return witness_ensemble_impl(space, start, words, steps, seed, true);
}

std::size_t witness_ensemble_serial(const BlowupSpace& space,
                                    const FiberPoint& start, std::size_t words,
                                    std::size_t steps, std::uint64_t seed) {
  return witness_ensemble_impl(space, start, words, steps, seed, false);
}

CharacterAverage character_walk_average(std::uint64_t seed, std::size_t steps,
                                        const TorusPointReal& start,
                                        std::int64_t char_m, std::int64_t char_n,
                                        const std::array<Rat, 4>& weights) {
  if (char_m == 0 && char_n == 0) {
    throw std::invalid_argument("character frequency must be nonzero");
  }
  const WeightSampler4 sampler(weights);
  SplitMix64 rng = substream(seed, 0xC11A5ull);
  TorusPointReal p = start;
  std::complex<double> acc = 0;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < steps; ++k) {
    p = apply_torus(gen_matrix(static_cast<TorusGen>(sampler.draw(rng))), p);
    const double phase =
        two_pi * (static_cast<double>(char_m) * p.x +
                  static_cast<double>(char_n) * p.y);
    acc += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  CharacterAverage out;
  out.steps = steps;
  if (steps > 0) out.mean = acc / static_cast<double>(steps);
  out.modulus = std::abs(out.mean);
  return out;
}

}  // namespace fgl
