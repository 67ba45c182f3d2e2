#pragma once

#include <array>
#include <string_view>

#include "hypersq/types.hpp"

namespace hypersq {

/// Sides of K with vertices A = -1-i, B = -1+i, C = 1+i, D = 1-i.
enum class Side { DA, AB, BC, CD };

/// G1..G4 name the side realizing the boundary minimum (DA, AB, BC, CD);
/// Separator means two sides tie.
enum class RegionLabel { G1, G2, G3, G4, Separator };

std::string_view to_string(Side side);
std::string_view to_string(RegionLabel label);

namespace geometry {
inline const Complex kA{-1.0, -1.0};
inline const Complex kB{-1.0, 1.0};
inline const Complex kC{1.0, 1.0};
inline const Complex kD{1.0, -1.0};
}  // namespace geometry

/// One of the eight symmetries of K: w -> i^rotation * (conjugate ? conj(w) : w).
struct Symmetry {
  int rotation = 0;
  bool conjugate = false;

  Complex apply(Complex w) const;
  SquarePoint apply(const SquarePoint& w) const { return SquarePoint(apply(w.value())); }
  Symmetry inverse() const;

  static std::array<Symmetry, 8> all();
};

/// True when x lies in the closed triangle AOD: Im x <= 0 and |Re x| <= -Im x.
bool in_triangle_AOD(const SquarePoint& x);

struct CanonicalPair {
  SquarePoint x;
  SquarePoint y;
  Symmetry symmetry;
};

/// Moves x into triangle AOD with the first matching symmetry (identity first).
CanonicalPair canonicalize(const SquarePoint& x, const SquarePoint& y);

/// Points p and q and the five separating segments induced by x in AOD.
struct Decomposition {
  SquarePoint x;
  SquarePoint p;
  SquarePoint q;

  /// Segment endpoints: Ap, Bp, Cq, Dq, pq.
  std::array<std::array<Complex, 2>, 5> segments() const;
};

Decomposition compute_pq(const SquarePoint& x);

/// Distances from x to the mirror images of y in the lines of DA, AB, BC, CD.
std::array<double, 4> reflected_denominators(const SquarePoint& x, const SquarePoint& y);

RegionLabel classify_region(const SquarePoint& x, const SquarePoint& y, double tie_tol = 1e-10);

/// min over z on the side of |x - z| + |z - y|.
double side_detour(const SquarePoint& x, const SquarePoint& y, Side side);

/// Triangular ratio metric |x - y| / min_{z in dK} (|x - z| + |z - y|).
double s_metric(const SquarePoint& x, const SquarePoint& y);

struct OracleResult {
  double s;
  Side side;             // side of the minimizing boundary point
  double runner_up_gap;  // best detour on any other side minus the best detour
};

/// Brute-force s: n uniform boundary samples, then golden-section search on
/// every side, keeping the best.
OracleResult boundary_oracle(const SquarePoint& x, const SquarePoint& y, int n = 400);

inline double boundary_oracle_s(const SquarePoint& x, const SquarePoint& y, int n = 400) {
  return boundary_oracle(x, y, n).s;
}

}  // namespace hypersq
