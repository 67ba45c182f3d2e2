#include "hypersq/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypersq/quadrature.hpp"

namespace hypersq {

double agm(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("agm requires positive finite arguments");
  }
  for (int i = 0; i < 64; ++i) {
    const double mean = 0.5 * (a + b);
    const double geo = std::sqrt(a * b);
    if (std::abs(mean - geo) <= 2.0 * std::numeric_limits<double>::epsilon() * mean) return mean;
    a = mean;
    b = geo;
  }
  return 0.5 * (a + b);
}

double elliptic_K(const Modulus& m) {
  if (!(m.k >= 0.0 && m.k <= 1.0)) throw DomainError("elliptic_K: modulus outside [0,1]");
  if (m.k == 1.0 || m.k_prime == 0.0) throw SingularityError("elliptic_K diverges at k = 1");
  return std::numbers::pi / (2.0 * agm(1.0, m.k_prime));
}

JacobiTriple jacobi_sn_cn_dn(double u, const Modulus& m, double landen_threshold) {
  if (!(m.k >= 0.0 && m.k < 1.0)) throw DomainError("jacobi_sn_cn_dn: modulus outside [0,1)");

  // Descending Landen scale: a_{n+1} = (a_n + b_n)/2, b_{n+1} = sqrt(a_n b_n),
  // c_{n+1} = (a_n - b_n)/2, starting from (1, k', k).
  std::array<double, 32> a{};
  std::array<double, 32> c{};
  a[0] = 1.0;
  c[0] = m.k;
  double b = m.k_prime;
  int n = 0;
  while (c[n] / a[n] > landen_threshold && n + 1 < static_cast<int>(a.size())) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }

  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) {
    phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  }

  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn^2 = k'^2 + k^2 cn^2 has no cancellation for real arguments.
  const double dn = std::hypot(m.k_prime, m.k * cn);
  return {sn, cn, dn};
}

namespace {

// 2 K(lambda) / K(lambda'), extended by 0 at lambda = 0 and +inf at 1.
double aspect_of(double lambda) {
  if (lambda <= 0.0) return 0.0;
  if (lambda >= 1.0) return std::numeric_limits<double>::infinity();
  const Modulus m = Modulus::from_k(lambda);
  return 2.0 * elliptic_K(m) / elliptic_K(m.complement());
}

}  // namespace

Modulus lambda_for_aspect(double kappa, const Tolerances& tol) {
  tol.validate();
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw DomainError("lambda_for_aspect requires kappa >= 1");

  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < tol.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= 1e-16) return Modulus::from_k(mid);
    if (aspect_of(mid) < kappa) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw IterationError("lambda_for_aspect: bisection did not converge");
}

double rect_constant(const Modulus& m, double landen_threshold) {
  if (!(m.k > 0.0 && m.k < 1.0)) throw DomainError("rect_constant requires 0 < lambda < 1");
  const double quarter = elliptic_K(m);
  // sn(iu,k) = i sc(u,k'), cn(iu,k) = nc(u,k'), dn(iu,k) = dc(u,k').
  const JacobiTriple t = jacobi_sn_cn_dn(quarter, m.complement(), landen_threshold);
  return quarter * std::abs(t.dn / (t.sn * t.cn));
}

double B_integral(double r, double quad_tol) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("B_integral requires 0 <= r <= 1");
  constexpr double kSplit = 0.5;
  const auto direct = [](double t) { return 1.0 / std::sqrt((1.0 - t * t) * (1.0 + t * t)); };
  if (r <= kSplit) return quad::integrate(direct, 0.0, r, quad_tol);

  // t = 1 - v^2 removes the inverse square root at t = 1:
  // dt / sqrt(1 - t^4) = 2 dv / sqrt((2 - v^2)(1 + (1 - v^2)^2)).
  const auto smooth = [](double v) {
    const double t = 1.0 - v * v;
    return 2.0 / std::sqrt((2.0 - v * v) * (1.0 + t * t));
  };
  const double head = quad::integrate(direct, 0.0, kSplit, 0.5 * quad_tol);
  return head + quad::integrate(smooth, std::sqrt(1.0 - r), std::sqrt(1.0 - kSplit), 0.5 * quad_tol);
}

}  // namespace hypersq
