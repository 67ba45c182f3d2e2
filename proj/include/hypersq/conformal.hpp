#pragma once

#include "hypersq/types.hpp"

namespace hypersq {

/// C = integral_0^1 dt / sqrt(1 + t^4); computed once, thread-safe.
double schwarz_christoffel_C();

/// Prevertex e^{i(pi/4 + j pi/2)} on the unit circle, j = 0..3.
Complex prevertex(int j);

/// Square vertex sqrt(2) e^{i(pi/4 + j pi/2)} = f(prevertex(j)).
Complex square_vertex(int j);

/// The disc-to-square map f(z) = C^{-1} integral_0^z d zeta / sqrt(1 + zeta^4).
///
/// The integral follows the radius from 0. On the closed disc
/// Re(1 + zeta^4) >= 0, so the principal square root is the continuous branch
/// with value 1 at the origin. Within 1e-3 of a prevertex the integral is
/// taken from the prevertex instead, after the substitution
/// zeta = omega + (z - omega) s^2 which removes the endpoint singularity.
SquarePoint forward_map(const DiscPoint& z, const Tolerances& tol = {});

/// f'(z) = C^{-1} (1 + z^4)^{-1/2}. Throws SingularityError at a prevertex.
Complex forward_derivative(const DiscPoint& z);

/// g = f^{-1}, by Newton iteration continued along the segment [0, w].
/// Starts with 16 continuation steps and doubles on failure.
DiscPoint inverse_map(const SquarePoint& w, const Tolerances& tol = {});

/// Radius r in [0,1] with B(r) = sqrt(2) C a, i.e. r e^{i pi/4} = g(a(1+i)).
double r_of_a(double a, const Tolerances& tol = {});

/// Conformal radius of K at an interior point: (1 - |z|^2) |f'(z)|, z = g(x).
double conformal_radius(const SquarePoint& x, const Tolerances& tol = {});

namespace detail {
/// Unscaled integral_0^z d zeta / sqrt(1 + zeta^4) for |z| <= 1.
Complex sc_integral(Complex z, double quad_tol);
}  // namespace detail

}  // namespace hypersq
