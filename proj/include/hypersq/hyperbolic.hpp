#pragma once

#include "hypersq/types.hpp"

namespace hypersq {

/// Hyperbolic distance with its primary representation th(rho/2).
struct HypDistance {
  double rho;
  double th_half;
};

/// Points closer than this to the boundary of K are rejected.
inline constexpr double kBoundaryExclusion = 1e-9;

/// th(rho_U(z1, z2)/2) = |z1 - z2| / |1 - z1 conj(z2)| for |z1|, |z2| < 1.
double pseudo_hyp_disc(const DiscPoint& z1, const DiscPoint& z2);

/// th(rho_K(x, y)/2), pulled back to the disc through g = f^{-1}.
double th_half_rho_square(const SquarePoint& x, const SquarePoint& y, const Tolerances& tol = {});

HypDistance rho_square(const SquarePoint& x, const SquarePoint& y, const Tolerances& tol = {});

}  // namespace hypersq
