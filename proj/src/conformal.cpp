#include "hypersq/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "hypersq/quadrature.hpp"
#include "hypersq/special_fn.hpp"

namespace hypersq {

namespace {

constexpr double kCornerRadius = 1e-3;
constexpr int kInitialSteps = 16;
constexpr int kMaxSteps = 1024;
constexpr double kPathTol = 1e-4;

Complex clamp_to_disc(Complex z) {
  const double r = std::abs(z);
  return r > 1.0 ? z / r : z;
}

Complex integrand_root(Complex z) {
  const Complex z2 = z * z;
  return std::sqrt(1.0 + z2 * z2);
}

// integral_omega^z via zeta = omega + eps s^2, eps = z - omega.
Complex corner_integral(Complex z, int j, double quad_tol) {
  const Complex omega = prevertex(j);
  const Complex eps = z - omega;
  const auto integrand = [&](double s) {
    const Complex zeta = omega + eps * (s * s);
    Complex cofactor = 1.0;
    for (int l = 0; l < 4; ++l) {
      if (l != j) cofactor *= zeta - prevertex(l);
    }
    return 2.0 * eps / std::sqrt(eps * cofactor);
  };
  return quad::integrate(integrand, 0.0, 1.0, quad_tol);
}

}  // namespace

Complex prevertex(int j) {
  const double angle = std::numbers::pi / 4.0 + (j & 3) * std::numbers::pi / 2.0;
  return std::polar(1.0, angle);
}

Complex square_vertex(int j) {
  static constexpr double kRe[4] = {1.0, -1.0, -1.0, 1.0};
  static constexpr double kIm[4] = {1.0, 1.0, -1.0, -1.0};
  return {kRe[j & 3], kIm[j & 3]};
}

double schwarz_christoffel_C() {
  static const double value = quad::integrate(
      [](double t) { return 1.0 / std::sqrt(1.0 + t * t * t * t); }, 0.0, 1.0, 1e-15);
  return value;
}

namespace detail {

Complex sc_integral(Complex z, double quad_tol) {
  if (z == 0.0) return 0.0;
  for (int j = 0; j < 4; ++j) {
    const double dist = std::abs(z - prevertex(j));
    if (dist < kCornerRadius) {
      const Complex corner = schwarz_christoffel_C() * square_vertex(j);
      if (dist == 0.0) return corner;
      return corner + corner_integral(z, j, quad_tol);
    }
  }
  // The integral is O(|z|); scale the tolerance so small points keep relative accuracy.
  const auto radial = [z](double t) { return z / integrand_root(z * t); };
  return quad::integrate(radial, 0.0, 1.0, quad_tol * std::min(1.0, std::abs(z)));
}

}  // namespace detail

SquarePoint forward_map(const DiscPoint& z, const Tolerances& tol) {
  tol.validate();
  return SquarePoint(detail::sc_integral(z.value(), tol.quad_tol) / schwarz_christoffel_C());
}

Complex forward_derivative(const DiscPoint& z) {
  const Complex root = integrand_root(z.value());
  if (std::norm(root) <= 16.0 * std::numeric_limits<double>::epsilon()) throw SingularityError("forward_derivative at a prevertex");
  return 1.0 / (schwarz_christoffel_C() * root);
}

namespace {

std::optional<Complex> continue_along_path(Complex target, int steps, double final_tol,
                                           const Tolerances& tol) {
  const double c = schwarz_christoffel_C();
  Complex z = 0.0;
  Complex fz = 0.0;
  for (int j = 1; j <= steps; ++j) {
    const Complex wt = target * (static_cast<double>(j) / steps);
    const double step_tol = j == steps ? final_tol : kPathTol;
    bool converged = false;
    for (int it = 0; it < tol.max_iter; ++it) {
      // Newton step for f(z) = wt; on the first pass this is the Euler predictor.
      const Complex previous = z;
      z = clamp_to_disc(z - c * (fz - wt) * integrand_root(z));
      fz = detail::sc_integral(z, tol.quad_tol) / c;
      if (std::abs(fz - wt) <= step_tol) {
        converged = true;
        break;
      }
      // Next to a prevertex w - vertex ~ sqrt(z - omega), so the residual can
      // stall above tolerance once z stops moving at double resolution.
      if (it > 0 && std::abs(z - previous) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z)) {
        converged = std::abs(fz - wt) <= std::max(step_tol, 1e-6);
        break;
      }
    }
    if (!converged) return std::nullopt;
  }
  return z;
}

}  // namespace

DiscPoint inverse_map(const SquarePoint& w, const Tolerances& tol) {
  tol.validate();
  const Complex target = w.value();
  if (target == 0.0) return DiscPoint{};
  for (int j = 0; j < 4; ++j) {
    if (std::abs(target - square_vertex(j)) < 1e-15) return DiscPoint(prevertex(j));
  }
  const bool on_boundary = w.boundary_distance() <= SquarePoint::kSlack;
  double final_tol = tol.newton_tol * std::min(1.0, std::abs(target));
  if (on_boundary) final_tol = std::max(final_tol, 1e-9);

  for (int steps = kInitialSteps; steps <= kMaxSteps; steps *= 2) {
    if (const auto z = continue_along_path(target, steps, final_tol, tol)) return DiscPoint(*z);
  }
  throw IterationError("inverse_map: Newton continuation did not converge");
}

double r_of_a(double a, const Tolerances& tol) {
  tol.validate();
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("r_of_a requires 0 <= a <= 1");
  if (a == 0.0) return 0.0;
  const double target = std::numbers::sqrt2 * schwarz_christoffel_C() * a;
  if (target >= B_integral(1.0)) return 1.0;

  // Safeguarded Newton on B(r) = target; B'(r) = 1 / sqrt(1 - r^4).
  double lo = 0.0;
  double hi = 1.0;
  double r = std::min(target, 0.99);
  for (int it = 0; it < 4 * tol.max_iter; ++it) {
    const double residual = B_integral(r) - target;
    if (std::abs(residual) <= 1e-13) return r;
    (residual < 0.0 ? lo : hi) = r;
    if (hi - lo <= 1e-16) return r;
    double next = r - residual * std::sqrt((1.0 - r * r) * (1.0 + r * r));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    r = next;
  }
  throw IterationError("r_of_a did not converge");
}

double conformal_radius(const SquarePoint& x, const Tolerances& tol) {
  if (x.boundary_distance() <= SquarePoint::kSlack) {
    throw DomainError("conformal radius requires an interior point");
  }
  const DiscPoint z = inverse_map(x, tol);
  return (1.0 - std::norm(z.value())) * std::abs(forward_derivative(z));
}

}  // namespace hypersq
