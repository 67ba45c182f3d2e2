#pragma once

#include "hypersq/types.hpp"

namespace hypersq {

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// Arithmetic-geometric mean of two positive numbers.
double agm(double a, double b);

/// Complete elliptic integral of the first kind K(k), modulus convention.
/// Throws SingularityError for k = 1.
double elliptic_K(const Modulus& m);

/// Jacobi elliptic functions of real argument by descending Landen
/// transformation. The recursion stops once the running modulus falls
/// below `landen_threshold`.
JacobiTriple jacobi_sn_cn_dn(double u, const Modulus& m, double landen_threshold = 1e-14);

/// Modulus lambda of the rectangle [-kappa, kappa] x [-1, 1], i.e. the root of
/// 2 K(lambda) / K(lambda') = kappa.
Modulus lambda_for_aspect(double kappa, const Tolerances& tol = {});

/// Maximal value of 2 d(x) / r(x) over the rectangle with modulus lambda:
///   K(lambda) |cn(iK, lambda) dn(iK, lambda) / sn(iK, lambda)|,
/// evaluated through Jacobi's imaginary transformation so only real
/// arguments are needed. Has a pole at lambda = sqrt(2)/2.
double rect_constant(const Modulus& m, double landen_threshold = 1e-14);

/// B(r) = integral_0^r dt / sqrt(1 - t^4), 0 <= r <= 1.
double B_integral(double r, double quad_tol = 1e-13);

}  // namespace hypersq
