#include "hypersq/hyperbolic.hpp"

#include <cmath>

#include "hypersq/conformal.hpp"

namespace hypersq {

namespace {

void require_interior(const SquarePoint& w) {
  if (w.boundary_distance() < kBoundaryExclusion) {
    throw DomainError("hyperbolic distance requires points strictly inside the square");
  }
}

}  // namespace

double pseudo_hyp_disc(const DiscPoint& z1, const DiscPoint& z2) {
  const Complex a = z1.value();
  const Complex b = z2.value();
  if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0) {
    throw DomainError("pseudo-hyperbolic distance requires points in the open disc");
  }
  if (a == b) return 0.0;
  return std::abs(a - b) / std::abs(1.0 - a * std::conj(b));
}

double th_half_rho_square(const SquarePoint& x, const SquarePoint& y, const Tolerances& tol) {
  require_interior(x);
  require_interior(y);
  if (x.value() == y.value()) return 0.0;
  return pseudo_hyp_disc(inverse_map(x, tol), inverse_map(y, tol));
}

HypDistance rho_square(const SquarePoint& x, const SquarePoint& y, const Tolerances& tol) {
  const double th = th_half_rho_square(x, y, tol);
  return {2.0 * std::atanh(th), th};
}

}  // namespace hypersq
