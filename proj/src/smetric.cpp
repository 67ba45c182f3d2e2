#include "hypersq/smetric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypersq {

namespace {

struct SideGeometry {
  Complex from;
  Complex to;
};

SideGeometry side_geometry(Side side) {
  using namespace geometry;
  switch (side) {
    case Side::DA: return {kD, kA};
    case Side::AB: return {kA, kB};
    case Side::BC: return {kB, kC};
    case Side::CD: return {kC, kD};
  }
  return {kD, kA};
}

// Mirror image of y in the supporting line of the side, and the distance of
// a point to that line.
Complex reflect(Complex y, Side side) {
  switch (side) {
    case Side::DA: return std::conj(y) - Complex(0.0, 2.0);
    case Side::AB: return -std::conj(y) - 2.0;
    case Side::BC: return std::conj(y) + Complex(0.0, 2.0);
    case Side::CD: return -std::conj(y) + 2.0;
  }
  return y;
}

double line_distance(Complex w, Side side) {
  switch (side) {
    case Side::DA: return w.imag() + 1.0;
    case Side::AB: return w.real() + 1.0;
    case Side::BC: return 1.0 - w.imag();
    case Side::CD: return 1.0 - w.real();
  }
  return 0.0;
}

constexpr std::array<Side, 4> kSides = {Side::DA, Side::AB, Side::BC, Side::CD};

}  // namespace

std::string_view to_string(Side side) {
  switch (side) {
    case Side::DA: return "DA";
    case Side::AB: return "AB";
    case Side::BC: return "BC";
    case Side::CD: return "CD";
  }
  return "?";
}

std::string_view to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::G1: return "G1";
    case RegionLabel::G2: return "G2";
    case RegionLabel::G3: return "G3";
    case RegionLabel::G4: return "G4";
    case RegionLabel::Separator: return "SEPARATOR";
  }
  return "?";
}

Complex Symmetry::apply(Complex w) const {
  if (conjugate) w = std::conj(w);
  switch (rotation & 3) {
    case 1: return {-w.imag(), w.real()};
    case 2: return -w;
    case 3: return {w.imag(), -w.real()};
    default: return w;
  }
}

Symmetry Symmetry::inverse() const {
  // (i^k conj)^{-1} = conj i^{-k} = i^k conj; pure rotations invert to i^{-k}.
  if (conjugate) return *this;
  return {(4 - (rotation & 3)) & 3, false};
}

std::array<Symmetry, 8> Symmetry::all() {
  return {{{0, false}, {0, true}, {1, false}, {2, false}, {3, false}, {1, true}, {2, true}, {3, true}}};
}

bool in_triangle_AOD(const SquarePoint& x) {
  return x.im() <= 0.0 && std::abs(x.re()) <= -x.im();
}

CanonicalPair canonicalize(const SquarePoint& x, const SquarePoint& y) {
  for (const Symmetry& sigma : Symmetry::all()) {
    const SquarePoint image = sigma.apply(x);
    if (in_triangle_AOD(image)) return {image, sigma.apply(y), sigma};
  }
  // Unreachable: the eight images of x cover every triangle.
  return {x, y, Symmetry{}};
}

std::array<std::array<Complex, 2>, 5> Decomposition::segments() const {
  using namespace geometry;
  return {{{kA, p.value()}, {kB, p.value()}, {kC, q.value()}, {kD, q.value()}, {p.value(), q.value()}}};
}

Decomposition compute_pq(const SquarePoint& x) {
  const double t = x.re();
  const double a = -x.im();
  if (!(a >= 0.0 && a < 1.0)) throw DomainError("compute_pq requires 0 <= -Im x < 1");
  if (!(std::abs(t) <= a)) throw DomainError("compute_pq requires x in triangle AOD");
  const double re_p = -(a * a + t) / (1.0 + t);
  const double re_q = (a * a - t) / (1.0 - t);
  return {x, SquarePoint(re_p, a), SquarePoint(re_q, a)};
}

std::array<double, 4> reflected_denominators(const SquarePoint& x, const SquarePoint& y) {
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < kSides.size(); ++i) {
    out[i] = std::abs(x.value() - reflect(y.value(), kSides[i]));
  }
  return out;
}

RegionLabel classify_region(const SquarePoint& x, const SquarePoint& y, double tie_tol) {
  const auto d = reflected_denominators(x, y);
  std::array<std::size_t, 4> order = {0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return d[l] < d[r]; });
  if (d[order[1]] - d[order[0]] <= tie_tol) return RegionLabel::Separator;
  return static_cast<RegionLabel>(order[0]);
}

double side_detour(const SquarePoint& x, const SquarePoint& y, Side side) {
  const Complex xv = x.value();
  const Complex yv = y.value();
  const double dx = std::max(0.0, line_distance(xv, side));
  const double dy = std::max(0.0, line_distance(yv, side));
  if (dx + dy == 0.0) return std::abs(xv - yv);

  // The straight path from x to the mirror image of y crosses the line at z.
  const Complex mirror = reflect(yv, side);
  const Complex z = xv + (dx / (dx + dy)) * (mirror - xv);
  const SideGeometry g = side_geometry(side);
  const Complex along = g.to - g.from;
  const double param = std::real((z - g.from) * std::conj(along)) / std::norm(along);
  if (param >= 0.0 && param <= 1.0) return std::abs(xv - mirror);

  // Detour is convex along the line with its minimizer off the side.
  const auto via = [&](Complex v) { return std::abs(xv - v) + std::abs(v - yv); };
  return std::min(via(g.from), via(g.to));
}

double s_metric(const SquarePoint& x, const SquarePoint& y) {
  if (x.value() == y.value()) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (Side side : kSides) best = std::min(best, side_detour(x, y, side));
  return std::clamp(std::abs(x.value() - y.value()) / best, 0.0, 1.0);
}

OracleResult boundary_oracle(const SquarePoint& x, const SquarePoint& y, int n) {
  n = std::max(n, 4);
  const Complex xv = x.value();
  const Complex yv = y.value();
  const auto detour = [&](Complex z) { return std::abs(xv - z) + std::abs(z - yv); };

  // Coarse pass over the perimeter.
  std::array<double, 4> best{};
  best.fill(std::numeric_limits<double>::infinity());
  const int per_side = (n + 3) / 4;
  for (std::size_t s = 0; s < kSides.size(); ++s) {
    const SideGeometry g = side_geometry(kSides[s]);
    for (int i = 0; i <= per_side; ++i) {
      const double t = static_cast<double>(i) / per_side;
      best[s] = std::min(best[s], detour(g.from + t * (g.to - g.from)));
    }
  }

  // Golden-section search on each side; the detour is convex along a side.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t s = 0; s < kSides.size(); ++s) {
    const SideGeometry g = side_geometry(kSides[s]);
    const auto along = [&](double t) { return detour(g.from + t * (g.to - g.from)); };
    double lo = 0.0;
    double hi = 1.0;
    double m1 = hi - inv_phi * (hi - lo);
    double m2 = lo + inv_phi * (hi - lo);
    double f1 = along(m1);
    double f2 = along(m2);
    for (int it = 0; it < 90 && hi - lo > 1e-15; ++it) {
      if (f1 <= f2) {
        hi = m2;
        m2 = m1;
        f2 = f1;
        m1 = hi - inv_phi * (hi - lo);
        f1 = along(m1);
      } else {
        lo = m1;
        m1 = m2;
        f1 = f2;
        m2 = lo + inv_phi * (hi - lo);
        f2 = along(m2);
      }
    }
    best[s] = std::min({best[s], f1, f2, along(lo), along(hi)});
  }

  std::array<std::size_t, 4> order = {0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return best[l] < best[r]; });
  const double dist = std::abs(xv - yv);
  const double s = dist == 0.0 ? 0.0 : std::clamp(dist / best[order[0]], 0.0, 1.0);
  return {s, kSides[order[0]], best[order[1]] - best[order[0]]};
}

}  // namespace hypersq
